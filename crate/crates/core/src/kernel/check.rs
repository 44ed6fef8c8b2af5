//! Judgment synthesis, one case per proof constructor.

use std::collections::BTreeSet;

use serde::Serialize;

use super::error::{ErrorKind, KernelError, ProofPath};
use super::proof::Proof;
use crate::reduction::{conv_check, ConvResult};
use crate::syntax::{Context, Judgment, Name, RelType, Term};

/// Rule names of the relational proof system, one per proof constructor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Assumption,
    ArrowIntro,
    ArrowElim,
    ForallElim,
    ForallIntro,
    Conversion,
    ConverseIntro,
    ConverseElim,
    PromotionIntro,
    PromotionElim,
    CompositionElim,
    CompositionIntro,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Assumption => "assumption",
            Rule::ArrowIntro => "arrow-intro",
            Rule::ArrowElim => "arrow-elim",
            Rule::ForallElim => "forall-elim",
            Rule::ForallIntro => "forall-intro",
            Rule::Conversion => "conversion",
            Rule::ConverseIntro => "converse-intro",
            Rule::ConverseElim => "converse-elim",
            Rule::PromotionIntro => "promotion-intro",
            Rule::PromotionElim => "promotion-elim",
            Rule::CompositionElim => "composition-elim",
            Rule::CompositionIntro => "composition-intro",
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A checked typing derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub context: Context,
    pub judgment: Judgment,
    pub children: Vec<Derivation>,
}

impl Derivation {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Derivation::size).sum::<usize>()
    }
}

/// Synthesizes the judgment proved by `p` under `ctx`.
pub fn check(ctx: &Context, p: &Proof, fuel: usize) -> Result<Judgment, KernelError> {
    derive(ctx, p, fuel).map(|d| d.judgment)
}

/// Like [`check`], then compares against `declared` up to alpha.
pub fn check_declared(
    ctx: &Context,
    p: &Proof,
    declared: &Judgment,
    fuel: usize,
) -> Result<Judgment, KernelError> {
    let j = check(ctx, p, fuel)?;
    if &j != declared {
        return Err(KernelError::new(
            ErrorKind::DeclarationMismatch,
            &ProofPath::default(),
            format!("declared {declared}, synthesized {j}"),
        ));
    }
    Ok(j)
}

/// Synthesizes the full derivation tree.
pub fn derive(ctx: &Context, p: &Proof, fuel: usize) -> Result<Derivation, KernelError> {
    Checker { fuel }.go(ctx, p, &ProofPath::default())
}

struct Checker {
    fuel: usize,
}

fn term_fv(ctx: &Context) -> BTreeSet<Name> {
    ctx.free_vars().terms
}

impl Checker {
    fn convert(&self, have: &Term, want: &Term, at: &ProofPath) -> Result<(), KernelError> {
        match conv_check(have, want, self.fuel) {
            ConvResult::Equal => Ok(()),
            ConvResult::Distinct => Err(KernelError::new(
                ErrorKind::ConversionFailed,
                at,
                format!("{have} is not convertible with {want}"),
            )),
            ConvResult::Undecided => Err(KernelError::new(
                ErrorKind::ConversionUndecided,
                at,
                format!("{have} ~ {want} undecided within fuel {}", self.fuel),
            )),
        }
    }

    fn go(&self, ctx: &Context, p: &Proof, at: &ProofPath) -> Result<Derivation, KernelError> {
        let node = |rule, judgment, children| Derivation {
            rule,
            context: ctx.clone(),
            judgment,
            children,
        };
        match p {
            Proof::Var(u) => match ctx.lookup(u) {
                Some(j) => Ok(node(Rule::Assumption, j.clone(), vec![])),
                None => Err(KernelError::new(
                    ErrorKind::UnboundProofVariable,
                    at,
                    format!("{u} is not in the context"),
                )),
            },
            Proof::Lam { var, left, ty, right, body } => {
                let fresh_err = |msg: String| Err(KernelError::new(ErrorKind::FreshnessViolation, at, msg));
                if left == right {
                    return fresh_err(format!("subject binders must differ, both are {left}"));
                }
                let mut taken = term_fv(ctx);
                taken.extend(ty.free_term_vars());
                for x in [left, right] {
                    if taken.contains(x) {
                        return fresh_err(format!("{x} occurs free in the context or in {ty}"));
                    }
                }
                let assumption = Judgment::new(Term::Free(left.clone()), ty.clone(), Term::Free(right.clone()));
                let Some(inner) = ctx.extended(var.clone(), assumption) else {
                    return fresh_err(format!("proof variable {var} is already bound"));
                };
                let d = self.go(&inner, body, &at.child(0))?;
                let result_ty = &d.judgment.ty;
                for x in [left, right] {
                    if result_ty.free_term_vars().contains(x) {
                        return fresh_err(format!("{x} occurs free in the body type {result_ty}"));
                    }
                }
                let j = Judgment::new(
                    Term::lam_named(left, d.judgment.left.clone()),
                    RelType::arrow(ty.clone(), result_ty.clone()),
                    Term::lam_named(right, d.judgment.right.clone()),
                );
                Ok(node(Rule::ArrowIntro, j, vec![d]))
            }
            Proof::App(f, a) => {
                let df = self.go(ctx, f, &at.child(0))?;
                let da = self.go(ctx, a, &at.child(1))?;
                let RelType::Arrow(dom, cod) = &df.judgment.ty else {
                    return Err(KernelError::new(
                        ErrorKind::NotAnArrow,
                        at,
                        format!("expected an arrow, found {}", df.judgment.ty),
                    ));
                };
                if **dom != da.judgment.ty {
                    return Err(KernelError::new(
                        ErrorKind::ArgumentMismatch,
                        at,
                        format!("argument has type {}, expected {dom}", da.judgment.ty),
                    ));
                }
                let j = Judgment::new(
                    Term::app(df.judgment.left.clone(), da.judgment.left.clone()),
                    (**cod).clone(),
                    Term::app(df.judgment.right.clone(), da.judgment.right.clone()),
                );
                Ok(node(Rule::ArrowElim, j, vec![df, da]))
            }
            Proof::TyApp(q, r) => {
                let d = self.go(ctx, q, &at.child(0))?;
                let RelType::All(_, body) = &d.judgment.ty else {
                    return Err(KernelError::new(
                        ErrorKind::NotAUniversal,
                        at,
                        format!("expected a universal type, found {}", d.judgment.ty),
                    ));
                };
                let j = Judgment::new(d.judgment.left.clone(), body.open(r), d.judgment.right.clone());
                Ok(node(Rule::ForallElim, j, vec![d]))
            }
            Proof::TyLam(x, q) => {
                if ctx.free_vars().types.contains(x) {
                    return Err(KernelError::new(
                        ErrorKind::FreshnessViolation,
                        at,
                        format!("type variable {x} occurs free in the context"),
                    ));
                }
                let d = self.go(ctx, q, &at.child(0))?;
                let j = Judgment::new(
                    d.judgment.left.clone(),
                    RelType::all_named(x, d.judgment.ty.clone()),
                    d.judgment.right.clone(),
                );
                Ok(node(Rule::ForallIntro, j, vec![d]))
            }
            Proof::Conv { left, proof, right } => {
                let d = self.go(ctx, proof, &at.child(0))?;
                self.convert(&d.judgment.left, left, at)?;
                self.convert(&d.judgment.right, right, at)?;
                let j = Judgment::new(left.clone(), d.judgment.ty.clone(), right.clone());
                Ok(node(Rule::Conversion, j, vec![d]))
            }
            Proof::ConvI(q) => {
                let d = self.go(ctx, q, &at.child(0))?;
                let j = Judgment::new(
                    d.judgment.right.clone(),
                    RelType::conv(d.judgment.ty.clone()),
                    d.judgment.left.clone(),
                );
                Ok(node(Rule::ConverseIntro, j, vec![d]))
            }
            Proof::ConvE(q) => {
                let d = self.go(ctx, q, &at.child(0))?;
                let RelType::Conv(inner) = &d.judgment.ty else {
                    return Err(KernelError::new(
                        ErrorKind::NotAConverse,
                        at,
                        format!("expected a converse, found {}", d.judgment.ty),
                    ));
                };
                let j = Judgment::new(d.judgment.right.clone(), (**inner).clone(), d.judgment.left.clone());
                Ok(node(Rule::ConverseElim, j, vec![d]))
            }
            Proof::Iota(t, f) => {
                let j = Judgment::new(t.clone(), RelType::promote(f.clone()), Term::app(f.clone(), t.clone()));
                Ok(node(Rule::PromotionIntro, j, vec![]))
            }
            Proof::Rho { var, left, right, eq, body } => {
                let de = self.go(ctx, eq, &at.child(0))?;
                let RelType::Promote(f) = &de.judgment.ty else {
                    return Err(KernelError::new(
                        ErrorKind::NotAPromotion,
                        at,
                        format!("expected a promotion, found {}", de.judgment.ty),
                    ));
                };
                let db = self.go(ctx, body, &at.child(1))?;
                let redex = Term::app(f.clone(), de.judgment.left.clone());
                let want_l = left.subst(var, &redex);
                let want_r = right.subst(var, &redex);
                if db.judgment.left != want_l || db.judgment.right != want_r {
                    return Err(KernelError::new(
                        ErrorKind::RhoPremiseMismatch,
                        at,
                        format!(
                            "premise proves {}, guide expects {want_l} [..] {want_r}",
                            db.judgment
                        ),
                    ));
                }
                let target = &de.judgment.right;
                let j = Judgment::new(left.subst(var, target), db.judgment.ty.clone(), right.subst(var, target));
                Ok(node(Rule::PromotionElim, j, vec![de, db]))
            }
            Proof::Pair { first, second, mid } => {
                let d1 = self.go(ctx, first, &at.child(0))?;
                let d2 = self.go(ctx, second, &at.child(1))?;
                if d1.judgment.right != d2.judgment.left || &d1.judgment.right != mid {
                    return Err(KernelError::new(
                        ErrorKind::PairMidMismatch,
                        at,
                        format!(
                            "middle terms {}, {} and declared {mid} disagree",
                            d1.judgment.right, d2.judgment.left
                        ),
                    ));
                }
                let j = Judgment::new(
                    d1.judgment.left.clone(),
                    RelType::comp(d1.judgment.ty.clone(), d2.judgment.ty.clone()),
                    d2.judgment.right.clone(),
                );
                Ok(node(Rule::CompositionIntro, j, vec![d1, d2]))
            }
            Proof::Pi { scrutinee, var, left_proof, right_proof, body } => {
                let ds = self.go(ctx, scrutinee, &at.child(0))?;
                let RelType::Comp(r1, r2) = &ds.judgment.ty else {
                    return Err(KernelError::new(
                        ErrorKind::NotAComposition,
                        at,
                        format!("expected a composition, found {}", ds.judgment.ty),
                    ));
                };
                let fresh_err = |msg: String| Err(KernelError::new(ErrorKind::FreshnessViolation, at, msg));
                if left_proof == right_proof {
                    return fresh_err(format!("proof binders must differ, both are {left_proof}"));
                }
                if term_fv(ctx).contains(var) || ds.judgment.free_vars().terms.contains(var) {
                    return fresh_err(format!("{var} occurs free in the context or the scrutinee"));
                }
                let x = Term::Free(var.clone());
                let (t, t2) = (&ds.judgment.left, &ds.judgment.right);
                let mut inner = ctx.clone();
                for (u, j) in [
                    (left_proof, Judgment::new(t.clone(), (**r1).clone(), x.clone())),
                    (right_proof, Judgment::new(x.clone(), (**r2).clone(), t2.clone())),
                ] {
                    if inner.push(u.clone(), j).is_err() {
                        return fresh_err(format!("proof variable {u} is already bound"));
                    }
                }
                let db = self.go(&inner, body, &at.child(1))?;
                if db.judgment.free_vars().terms.contains(var) {
                    return fresh_err(format!("{var} escapes into {}", db.judgment));
                }
                let j = db.judgment.clone();
                Ok(node(Rule::CompositionElim, j, vec![ds, db]))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::combinators::{ff, tt};
    use crate::syntax::name;

    const FUEL: usize = 1000;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    fn x() -> RelType {
        RelType::var("X")
    }

    fn bool_ty() -> RelType {
        RelType::all("X", RelType::arrow(x(), RelType::arrow(x(), x())))
    }

    fn id_proof() -> Proof {
        Proof::ty_lam("X", Proof::lam("u", "x", x(), "x'", Proof::var("u")))
    }

    fn collapse_ctx(r: &RelType) -> Context {
        [
            (name("u"), Judgment::new(tt(), bool_ty(), ff())),
            (name("v"), Judgment::new(v("x"), r.clone(), v("x'"))),
            (name("w"), Judgment::new(v("y"), r.clone(), v("y'"))),
        ]
        .into_iter()
        .collect()
    }

    fn collapse_proof(r: &RelType) -> Proof {
        let inner = Proof::app(
            Proof::app(Proof::ty_app(Proof::var("u"), r.clone()), Proof::var("v")),
            Proof::var("w"),
        );
        Proof::conv(v("x"), inner, v("y'"))
    }

    #[test]
    fn collapse() {
        let r = RelType::var("R");
        let j = check(&collapse_ctx(&r), &collapse_proof(&r), FUEL).unwrap();
        assert_eq!(j, Judgment::new(v("x"), r, v("y'")));
    }

    #[test]
    fn identity() {
        let j = check(&Context::new(), &id_proof(), FUEL).unwrap();
        let id = Term::lam("x", v("x"));
        assert_eq!(j, Judgment::new(id.clone(), RelType::all("X", RelType::arrow(x(), x())), id));
    }

    #[test]
    fn iota() {
        let j = check(&Context::new(), &Proof::Iota(v("a"), v("f")), FUEL).unwrap();
        assert_eq!(j, Judgment::new(v("a"), RelType::promote(v("f")), Term::app(v("f"), v("a"))));
    }

    #[test]
    fn declared_mismatch() {
        let bad = Judgment::new(Term::lam("x", v("x")), bool_ty(), Term::lam("x", v("x")));
        let e = check_declared(&Context::new(), &id_proof(), &bad, FUEL).unwrap_err();
        assert_eq!(e.kind, ErrorKind::DeclarationMismatch);
    }

    #[test]
    fn lambda_freshness() {
        // x free in the context
        let ctx: Context = [(name("v"), Judgment::new(v("x"), x(), v("x")))].into_iter().collect();
        let p = Proof::lam("u", "x", x(), "x'", Proof::var("u"));
        assert_eq!(check(&ctx, &p, FUEL).unwrap_err().kind, ErrorKind::FreshnessViolation);
        // equal subject binders
        let p = Proof::lam("u", "z", x(), "z", Proof::var("u"));
        assert_eq!(check(&Context::new(), &p, FUEL).unwrap_err().kind, ErrorKind::FreshnessViolation);
    }

    #[test]
    fn rho_rewrites_application_to_target() {
        // eq : a [{f}] f a ; body : f a [X] f a (from w) ; result a' ..  here t' = f a
        let ctx: Context = [(name("w"), Judgment::new(Term::app(v("f"), v("a")), x(), v("b")))]
            .into_iter()
            .collect();
        let p = Proof::rho("z", v("z"), v("b"), Proof::Iota(v("a"), v("f")), Proof::var("w"));
        let j = check(&ctx, &p, FUEL).unwrap();
        assert_eq!(j, Judgment::new(Term::app(v("f"), v("a")), x(), v("b")));
        let bad = Proof::rho("z", v("z"), v("z"), Proof::Iota(v("a"), v("f")), Proof::var("w"));
        assert_eq!(check(&ctx, &bad, FUEL).unwrap_err().kind, ErrorKind::RhoPremiseMismatch);
    }

    #[test]
    fn pair_and_pi() {
        let ctx: Context = [
            (name("p"), Judgment::new(v("a"), x(), v("m"))),
            (name("q"), Judgment::new(v("m"), RelType::var("Y"), v("b"))),
        ]
        .into_iter()
        .collect();
        let pair = Proof::pair(Proof::var("p"), Proof::var("q"), v("m"));
        let j = check(&ctx, &pair, FUEL).unwrap();
        assert_eq!(j.ty, RelType::comp(x(), RelType::var("Y")));
        let bad = Proof::pair(Proof::var("p"), Proof::var("q"), v("n"));
        assert_eq!(check(&ctx, &bad, FUEL).unwrap_err().kind, ErrorKind::PairMidMismatch);

        let pi = Proof::pi(pair.clone(), "z", "u1", "u2", Proof::var("u1"));
        assert_eq!(check(&ctx, &pi, FUEL).unwrap_err().kind, ErrorKind::FreshnessViolation);
        let pi = Proof::pi(pair.clone(), "z", "u1", "u2", Proof::pair(Proof::var("u1"), Proof::var("u2"), v("z")));
        assert_eq!(check(&ctx, &pi, FUEL).unwrap(), j);
    }
}
