//! Generic fmap, fold and in for parametric datatypes, with explicit
//! System F typing derivations.

use super::PreludeError;
use crate::analysis::{polarity_holds, Polarity};
use crate::syntax::combinators::{compose, id, konst};
use crate::syntax::{Name, NameSupply, RelType, Term};
use crate::systemf::{validate_f, weaken_f, FContext, FDerivation, FType};

fn f_param(r: &RelType, what: &str) -> Result<FType, PreludeError> {
    FType::from_rel(r).ok_or_else(|| {
        PreludeError::MalformedParameter(format!("{what} needs a System F parameter, got {r}"))
    })
}

/// `fmap_{X,R}`, by recursion on `R`.
pub fn gen_fmap(x: &Name, r: &RelType) -> Result<Term, PreludeError> {
    let r = f_param(r, "fmap")?;
    Ok(fmap_term(x, &r, &mut supply_for(x, &r)))
}

fn supply_for(x: &Name, r: &FType) -> NameSupply {
    let mut s = NameSupply::avoiding(r.free_tvars());
    s.reserve([x.clone()]);
    s
}

fn fmap_term(x: &Name, r: &FType, supply: &mut NameSupply) -> Term {
    match r {
        FType::Free(n) if n == x => id(),
        FType::Free(_) => Term::app(konst(), id()),
        FType::Bound(_) => unreachable!("opened before recursion"),
        FType::Arrow(a, b) => {
            let fa = fmap_term(x, a, supply);
            let fb = fmap_term(x, b, supply);
            let f = Term::var("f");
            let body = compose(Term::app(fb, f.clone()), compose(Term::var("a"), Term::app(fa, f)));
            Term::lam("f", Term::lam("a", body))
        }
        FType::All(h, b) => {
            let y = supply.fresh(h);
            let fb = fmap_term(x, &b.open(&FType::Free(y)), supply);
            Term::lam("f", Term::app(fb, Term::var("f")))
        }
    }
}

/// `λa.λx. x a`
pub fn gen_fold() -> Term {
    Term::lam("a", Term::lam("x", Term::app(Term::var("x"), Term::var("a"))))
}

/// `λx.λa. a (fmap_{X,R} (fold a) x)`
pub fn gen_in(x: &Name, r: &RelType) -> Result<Term, PreludeError> {
    let fmap = gen_fmap(x, r)?;
    let a = Term::var("a");
    let inner = Term::apps(fmap, [Term::app(gen_fold(), a.clone()), Term::var("x")]);
    Ok(Term::lam("x", Term::lam("a", Term::app(a, inner))))
}

/// `fold in`, the identity on the datatype up to conversion.
pub fn gen_rebuild(x: &Name, r: &RelType) -> Result<Term, PreludeError> {
    Ok(Term::app(gen_fold(), gen_in(x, r)?))
}

/// An fmap derivation together with the names chosen for `X+` and `X-`.
#[derive(Debug, Clone)]
pub struct FmapDerivation {
    pub derivation: FDerivation,
    pub pos: Name,
    pub neg: Name,
    pub ty: FType,
}

/// Types `fmap_{X,R}` at `(X+ → X-) → [Xp/X]R → [Xp̄/X]R`.
///
/// Requires `X ∈p R`. A quantifier whose body is `X` itself, with no arrow in
/// between, has no Curry-style System F derivation and is reported as
/// underivable.
pub fn gen_fmap_deriv(x: &Name, r: &RelType, p: Polarity) -> Result<FmapDerivation, PreludeError> {
    let fr = f_param(r, "fmap")?;
    if !polarity_holds(x, p, r) {
        return Err(PreludeError::PolarityViolation(format!("{x} does not occur {p} in {r}")));
    }
    let mut supply = supply_for(x, &fr);
    let pos = supply.fresh(&format!("{x}pos"));
    let neg = supply.fresh(&format!("{x}neg"));
    let (tp, tn) = (FType::Free(pos.clone()), FType::Free(neg.clone()));
    let d = fmap_deriv(x, &fr, p, &tp, &tn, &[], &mut supply)?;
    let (xp, xq) = match p {
        Polarity::Plus => (&tp, &tn),
        Polarity::Minus => (&tn, &tp),
    };
    let expected = FType::arrows([FType::arrow(tp.clone(), tn.clone()), fr.subst(x, xp)], fr.subst(x, xq));
    let (_, ty) = validate_f(&vec![], &d)?;
    if ty != expected {
        return Err(PreludeError::Underivable(format!("fmap typed at {ty}, wanted {expected}")));
    }
    Ok(FmapDerivation { derivation: d, pos, neg, ty })
}

fn quantify(ys: &[Name], body: FType) -> FType {
    ys.iter().rev().fold(body, |acc, y| FType::all_named(y, acc))
}

/// Closed derivation of `fmap_{X,r} : (pos → neg) → (∀ys.[Xp/X]r) → (∀ys.[Xp̄/X]r)`.
fn fmap_deriv(
    x: &Name,
    r: &FType,
    p: Polarity,
    pos: &FType,
    neg: &FType,
    ys: &[Name],
    supply: &mut NameSupply,
) -> Result<FDerivation, PreludeError> {
    let fty = FType::arrow(pos.clone(), neg.clone());
    let (xp, xq) = match p {
        Polarity::Plus => (pos, neg),
        Polarity::Minus => (neg, pos),
    };
    match r {
        FType::Free(n) if n == x => {
            if !ys.is_empty() || p == Polarity::Minus {
                return Err(PreludeError::Underivable(format!(
                    "fmap at a quantified {x} needs eta; no System F derivation"
                )));
            }
            let g = supply.fresh("g");
            Ok(FDerivation::abs(&g, fty, FDerivation::var(&g)))
        }
        FType::Free(_) => {
            let u = quantify(ys, r.clone());
            Ok(k_i_deriv(&fty, &u, supply))
        }
        FType::Bound(_) => unreachable!("opened before recursion"),
        FType::Arrow(r1, r2) => {
            let d1 = fmap_deriv(x, r1, p.flip(), pos, neg, &[], supply)?;
            let d2 = fmap_deriv(x, r2, p, pos, neg, &[], supply)?;
            let (a1, a2) = (r1.subst(x, xp), r2.subst(x, xp));
            let b1 = r1.subst(x, xq);
            let f = supply.fresh("f");
            let a = supply.fresh("a");
            let xv = supply.fresh("x");
            let xv2 = supply.fresh("x");
            let aty = quantify(ys, FType::arrow(a1, a2));
            let outer_ctx: FContext = vec![(f.clone(), fty.clone()), (a.clone(), aty.clone()), (xv.clone(), b1.clone())];
            let mut inner_ctx = outer_ctx.clone();
            inner_ctx.push((xv2.clone(), b1.clone()));
            let d1 = weaken_all(&inner_ctx, &d1)?;
            let d2 = weaken_all(&outer_ctx, &d2)?;
            let a_inst = ys
                .iter()
                .fold(FDerivation::var(&a), |acc, y| FDerivation::inst(FType::Free(y.clone()), acc));
            let inner = FDerivation::abs(
                &xv2,
                b1.clone(),
                FDerivation::app(
                    a_inst,
                    FDerivation::app(FDerivation::app(d1, FDerivation::var(&f)), FDerivation::var(&xv2)),
                ),
            );
            let outer = FDerivation::abs(
                &xv,
                b1,
                FDerivation::app(
                    FDerivation::app(d2, FDerivation::var(&f)),
                    FDerivation::app(inner, FDerivation::var(&xv)),
                ),
            );
            let generalized = ys.iter().rev().fold(outer, |acc, y| FDerivation::gen(y, acc));
            Ok(FDerivation::abs(&f, fty, FDerivation::abs(&a, aty, generalized)))
        }
        FType::All(h, b) => {
            let y = supply.fresh(h);
            let body = b.open(&FType::Free(y.clone()));
            let mut inner_ys = ys.to_vec();
            inner_ys.push(y);
            let d = fmap_deriv(x, &body, p, pos, neg, &inner_ys, supply)?;
            let f = supply.fresh("f");
            let ctx: FContext = vec![(f.clone(), fty.clone())];
            let d = weaken_all(&ctx, &d)?;
            Ok(FDerivation::abs(&f, fty, FDerivation::app(d, FDerivation::var(&f))))
        }
    }
}

/// `K I : t → u → u`
fn k_i_deriv(t: &FType, u: &FType, supply: &mut NameSupply) -> FDerivation {
    let k = supply.fresh("k");
    let z = supply.fresh("z");
    let i = supply.fresh("i");
    let uu = FType::arrow(u.clone(), u.clone());
    let kd = FDerivation::abs(&k, uu, FDerivation::abs(&z, t.clone(), FDerivation::var(&k)));
    FDerivation::app(kd, FDerivation::abs(&i, u.clone(), FDerivation::var(&i)))
}

/// Moves a closed derivation into `ctx` one declaration at a time.
pub(crate) fn weaken_all(ctx: &FContext, d: &FDerivation) -> Result<FDerivation, PreludeError> {
    let mut cur: FContext = Vec::new();
    let mut d = d.clone();
    for (v, ty) in ctx {
        let (wide, d2) = weaken_f(&cur, &d, v, ty, cur.len())?;
        cur = wide;
        d = d2;
    }
    Ok(d)
}

fn x_positive(x: &Name, r: &RelType) -> Result<FType, PreludeError> {
    let fr = f_param(r, "datatype")?;
    if !polarity_holds(x, Polarity::Plus, r) {
        return Err(PreludeError::PolarityViolation(format!("{x} does not occur positively in {r}")));
    }
    Ok(fr)
}

fn d_param_f(x: &Name, r: &FType) -> FType {
    let xv = FType::Free(x.clone());
    FType::all_named(x, FType::arrow(FType::arrow(r.clone(), xv.clone()), xv))
}

/// `fold : ∀X.(R → X) → D → X`
pub fn gen_fold_deriv(x: &Name, r: &RelType) -> Result<FDerivation, PreludeError> {
    let fr = x_positive(x, r)?;
    let d = d_param_f(x, &fr);
    let xv = FType::Free(x.clone());
    let mut supply = supply_for(x, &fr);
    let a = supply.fresh("a");
    let v = supply.fresh("x");
    let body = FDerivation::app(FDerivation::inst(xv.clone(), FDerivation::var(&v)), FDerivation::var(&a));
    Ok(FDerivation::gen(
        x,
        FDerivation::abs(&a, FType::arrow(fr, xv), FDerivation::abs(&v, d, body)),
    ))
}

/// `in : [D/X]R → D`
pub fn gen_in_deriv(x: &Name, r: &RelType) -> Result<FDerivation, PreludeError> {
    let fr = x_positive(x, r)?;
    let d = d_param_f(x, &fr);
    let xv = FType::Free(x.clone());
    let mut supply = supply_for(x, &fr);
    let fmap = fmap_deriv(x, &fr, Polarity::Plus, &d, &xv, &[], &mut supply)?;
    let fold = gen_fold_deriv(x, r)?;
    let v = supply.fresh("x");
    let a = supply.fresh("a");
    let ctx: FContext = vec![(v.clone(), fr.subst(x, &d)), (a.clone(), FType::arrow(fr.clone(), xv.clone()))];
    let fmap = weaken_all(&ctx, &fmap)?;
    let fold = weaken_all(&ctx, &fold)?;
    let fold_a = FDerivation::app(FDerivation::inst(xv.clone(), fold), FDerivation::var(&a));
    let body = FDerivation::app(
        FDerivation::var(&a),
        FDerivation::app(FDerivation::app(fmap, fold_a), FDerivation::var(&v)),
    );
    Ok(FDerivation::abs(
        &v,
        fr.subst(x, &d),
        FDerivation::gen(x, FDerivation::abs(&a, FType::arrow(fr, xv), body)),
    ))
}

/// `fold in : D → D`
pub fn gen_rebuild_deriv(x: &Name, r: &RelType) -> Result<FDerivation, PreludeError> {
    let fr = x_positive(x, r)?;
    let d = d_param_f(x, &fr);
    Ok(FDerivation::app(
        FDerivation::inst(d, gen_fold_deriv(x, r)?),
        gen_in_deriv(x, r)?,
    ))
}
