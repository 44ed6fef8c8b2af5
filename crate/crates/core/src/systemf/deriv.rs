//! Explicit Curry-style System F derivations and their validator.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use super::ftype::{fctx_lookup, fctx_tvars, FContext, FType};
use crate::syntax::{fresh, Name, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FErrorKind {
    RuleMismatch,
    UnboundVariable,
    FreshnessViolation,
    ShadowingViolation,
    DottedCollision,
}

impl FErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FErrorKind::RuleMismatch => "rule-mismatch",
            FErrorKind::UnboundVariable => "unbound-variable",
            FErrorKind::FreshnessViolation => "freshness-violation",
            FErrorKind::ShadowingViolation => "shadowing-violation",
            FErrorKind::DottedCollision => "dotted-collision",
        }
    }
}

impl std::fmt::Display for FErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind}: {message}")]
pub struct FError {
    pub kind: FErrorKind,
    pub message: String,
}

impl FError {
    pub fn new(kind: FErrorKind, message: impl Into<String>) -> Self {
        FError {
            kind,
            message: message.into(),
        }
    }
}

/// A derivation node names its rule and carries that rule's instantiation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FDerivation {
    Var(Name),
    Abs {
        var: Name,
        domain: FType,
        body: Box<FDerivation>,
    },
    App(Box<FDerivation>, Box<FDerivation>),
    Gen {
        tvar: Name,
        body: Box<FDerivation>,
    },
    Inst {
        ty: FType,
        body: Box<FDerivation>,
    },
}

impl FDerivation {
    pub fn var(x: &Name) -> FDerivation {
        FDerivation::Var(x.clone())
    }

    pub fn abs(var: &Name, domain: FType, body: FDerivation) -> FDerivation {
        FDerivation::Abs {
            var: var.clone(),
            domain,
            body: Box::new(body),
        }
    }

    pub fn app(f: FDerivation, a: FDerivation) -> FDerivation {
        FDerivation::App(Box::new(f), Box::new(a))
    }

    pub fn gen(tvar: &Name, body: FDerivation) -> FDerivation {
        FDerivation::Gen {
            tvar: tvar.clone(),
            body: Box::new(body),
        }
    }

    pub fn inst(ty: FType, body: FDerivation) -> FDerivation {
        FDerivation::Inst {
            ty,
            body: Box::new(body),
        }
    }

    pub fn rule(&self) -> &'static str {
        match self {
            FDerivation::Var(_) => "var",
            FDerivation::Abs { .. } => "abs",
            FDerivation::App(..) => "app",
            FDerivation::Gen { .. } => "gen",
            FDerivation::Inst { .. } => "inst",
        }
    }

    pub fn children(&self) -> Vec<&FDerivation> {
        match self {
            FDerivation::Var(_) => vec![],
            FDerivation::Abs { body, .. } | FDerivation::Gen { body, .. } | FDerivation::Inst { body, .. } => {
                vec![body]
            }
            FDerivation::App(f, a) => vec![f, a],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(FDerivation::size).sum::<usize>()
    }

    /// The untyped term this derivation types.
    pub fn subject(&self) -> Term {
        match self {
            FDerivation::Var(x) => Term::Free(x.clone()),
            FDerivation::Abs { var, body, .. } => Term::lam_named(var, body.subject()),
            FDerivation::App(f, a) => Term::app(f.subject(), a.subject()),
            FDerivation::Gen { body, .. } | FDerivation::Inst { body, .. } => body.subject(),
        }
    }

    fn abs_binders(&self, out: &mut BTreeSet<Name>) {
        if let FDerivation::Abs { var, .. } = self {
            out.insert(var.clone());
        }
        for c in self.children() {
            c.abs_binders(out);
        }
    }

    /// Renames free occurrences of type variable `x` in the annotations.
    fn rename_tvar(&self, x: &Name, to: &FType) -> FDerivation {
        match self {
            FDerivation::Var(_) => self.clone(),
            FDerivation::Abs { var, domain, body } => {
                FDerivation::abs(var, domain.subst(x, to), body.rename_tvar(x, to))
            }
            FDerivation::App(f, a) => FDerivation::app(f.rename_tvar(x, to), a.rename_tvar(x, to)),
            FDerivation::Gen { tvar, .. } if tvar == x => self.clone(),
            FDerivation::Gen { tvar, body } => FDerivation::gen(tvar, body.rename_tvar(x, to)),
            FDerivation::Inst { ty, body } => FDerivation::inst(ty.subst(x, to), body.rename_tvar(x, to)),
        }
    }

    pub fn to_record(&self) -> FRecord {
        let (binder, ty) = match self {
            FDerivation::Var(x) => (Some(x.to_string()), None),
            FDerivation::Abs { var, domain, .. } => (Some(var.to_string()), Some(domain.to_string())),
            FDerivation::App(..) => (None, None),
            FDerivation::Gen { tvar, .. } => (Some(tvar.to_string()), None),
            FDerivation::Inst { ty, .. } => (None, Some(ty.to_string())),
        };
        FRecord {
            rule: self.rule(),
            binder,
            ty,
            children: self.children().into_iter().map(FDerivation::to_record).collect(),
        }
    }
}

/// Serializable form of an [`FDerivation`].
#[derive(Debug, Clone, Serialize)]
pub struct FRecord {
    pub rule: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub binder: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ty: Option<String>,
    pub children: Vec<FRecord>,
}

/// Checks every node of `d` against the System F rules under `ctx` and
/// returns the concluded subject and type.
pub fn validate_f(ctx: &FContext, d: &FDerivation) -> Result<(Term, FType), FError> {
    let mut names: BTreeSet<Name> = BTreeSet::new();
    for (x, _) in ctx {
        if !names.insert(x.clone()) {
            return Err(FError::new(FErrorKind::FreshnessViolation, format!("{x} declared twice")));
        }
    }
    let ty = infer(&mut ctx.clone(), d)?;
    Ok((d.subject(), ty))
}

fn infer(ctx: &mut FContext, d: &FDerivation) -> Result<FType, FError> {
    match d {
        FDerivation::Var(x) => fctx_lookup(ctx, x)
            .cloned()
            .ok_or_else(|| FError::new(FErrorKind::UnboundVariable, format!("{x} is not declared"))),
        FDerivation::Abs { var, domain, body } => {
            if fctx_lookup(ctx, var).is_some() {
                return Err(FError::new(
                    FErrorKind::FreshnessViolation,
                    format!("abstraction rebinds {var}"),
                ));
            }
            ctx.push((var.clone(), domain.clone()));
            let cod = infer(ctx, body);
            ctx.pop();
            Ok(FType::arrow(domain.clone(), cod?))
        }
        FDerivation::App(f, a) => {
            let tf = infer(ctx, f)?;
            let ta = infer(ctx, a)?;
            match tf {
                FType::Arrow(dom, cod) if *dom == ta => Ok(*cod),
                FType::Arrow(dom, _) => Err(FError::new(
                    FErrorKind::RuleMismatch,
                    format!("app: argument has type {ta}, function expects {dom}"),
                )),
                other => Err(FError::new(FErrorKind::RuleMismatch, format!("app: {other} is not an arrow"))),
            }
        }
        FDerivation::Gen { tvar, body } => {
            if fctx_tvars(ctx).contains(tvar) {
                return Err(FError::new(
                    FErrorKind::FreshnessViolation,
                    format!("gen: {tvar} occurs free in the context"),
                ));
            }
            Ok(FType::all_named(tvar, infer(ctx, body)?))
        }
        FDerivation::Inst { ty, body } => match infer(ctx, body)? {
            FType::All(_, b) => Ok(b.open(ty)),
            other => Err(FError::new(FErrorKind::RuleMismatch, format!("inst: {other} is not universal"))),
        },
    }
}

/// Weakening: inserts `var : ty` at position `at` of `ctx` and returns a
/// derivation valid in the widened context. Generalized type variables that
/// clash with `ty` are renamed.
pub fn weaken_f(
    ctx: &FContext,
    d: &FDerivation,
    var: &Name,
    ty: &FType,
    at: usize,
) -> Result<(FContext, FDerivation), FError> {
    if fctx_lookup(ctx, var).is_some() {
        return Err(FError::new(FErrorKind::ShadowingViolation, format!("{var} is already declared")));
    }
    let mut binders = BTreeSet::new();
    d.abs_binders(&mut binders);
    if binders.contains(var) {
        return Err(FError::new(
            FErrorKind::ShadowingViolation,
            format!("{var} is bound inside the derivation"),
        ));
    }
    let mut wide = ctx.clone();
    wide.insert(at.min(ctx.len()), (var.clone(), ty.clone()));
    let mut avoid = fctx_tvars(&wide);
    let d2 = rename_gens(d, &ty.free_tvars(), &mut avoid);
    validate_f(&wide, &d2)?;
    Ok((wide, d2))
}

fn rename_gens(d: &FDerivation, clash: &BTreeSet<Name>, avoid: &mut BTreeSet<Name>) -> FDerivation {
    match d {
        FDerivation::Var(_) => d.clone(),
        FDerivation::Abs { var, domain, body } => {
            FDerivation::abs(var, domain.clone(), rename_gens(body, clash, avoid))
        }
        FDerivation::App(f, a) => FDerivation::app(rename_gens(f, clash, avoid), rename_gens(a, clash, avoid)),
        FDerivation::Inst { ty, body } => FDerivation::inst(ty.clone(), rename_gens(body, clash, avoid)),
        FDerivation::Gen { tvar, body } if clash.contains(tvar) => {
            let mut taken = avoid.clone();
            taken.extend(clash.iter().cloned());
            let y = fresh(tvar, &taken);
            avoid.insert(y.clone());
            let renamed = body.rename_tvar(tvar, &FType::Free(y.clone()));
            FDerivation::gen(&y, rename_gens(&renamed, clash, avoid))
        }
        FDerivation::Gen { tvar, body } => FDerivation::gen(tvar, rename_gens(body, clash, avoid)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::combinators::{id, tt};
    use crate::syntax::name;

    fn x() -> FType {
        FType::var("X")
    }

    pub(crate) fn id_deriv() -> FDerivation {
        FDerivation::gen(&name("X"), FDerivation::abs(&name("x"), x(), FDerivation::var(&name("x"))))
    }

    #[test]
    fn validates_identity() {
        let (t, ty) = validate_f(&vec![], &id_deriv()).unwrap();
        assert_eq!(t, id());
        assert_eq!(ty, FType::identity());
    }

    #[test]
    fn validates_tt() {
        let d = FDerivation::gen(
            &name("X"),
            FDerivation::abs(
                &name("x"),
                x(),
                FDerivation::abs(&name("y"), x(), FDerivation::var(&name("x"))),
            ),
        );
        let (t, ty) = validate_f(&vec![], &d).unwrap();
        assert_eq!(t, tt());
        assert_eq!(ty, FType::all("X", FType::arrows([x(), x()], x())));
    }

    #[test]
    fn gen_side_condition() {
        let ctx = vec![(name("y"), x())];
        let d = FDerivation::gen(&name("X"), FDerivation::var(&name("y")));
        assert_eq!(validate_f(&ctx, &d).unwrap_err().kind, FErrorKind::FreshnessViolation);
    }

    #[test]
    fn rule_mismatch_and_unbound() {
        let d = FDerivation::inst(x(), FDerivation::abs(&name("x"), x(), FDerivation::var(&name("x"))));
        assert_eq!(validate_f(&vec![], &d).unwrap_err().kind, FErrorKind::RuleMismatch);
        assert_eq!(
            validate_f(&vec![], &FDerivation::var(&name("q"))).unwrap_err().kind,
            FErrorKind::UnboundVariable
        );
    }

    #[test]
    fn weakening() {
        let (wide, d) = weaken_f(&vec![], &id_deriv(), &name("y"), &FType::var("B"), 0).unwrap();
        assert_eq!(wide.len(), 1);
        assert_eq!(validate_f(&wide, &d).unwrap().1, FType::identity());
        // the generalized X clashes with the inserted type and gets renamed
        let (wide, d) = weaken_f(&vec![], &id_deriv(), &name("y"), &x(), 0).unwrap();
        assert_eq!(validate_f(&wide, &d).unwrap().1, FType::identity());
        assert!(matches!(d, FDerivation::Gen { ref tvar, .. } if &**tvar != "X"));
        let err = weaken_f(&wide, &d, &name("y"), &x(), 0).unwrap_err();
        assert_eq!(err.kind, FErrorKind::ShadowingViolation);
    }
}
