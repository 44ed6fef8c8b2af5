//! Proof builders for the derived type formers.

use std::collections::BTreeSet;

use crate::kernel::Proof;
use crate::syntax::combinators::{id, konst};
use crate::syntax::{name, Context, Judgment, Name, RelType, Term};

use super::derived::bool_ty;

/// A proof together with the context it lives in and the judgment it is
/// built to conclude.
#[derive(Debug, Clone)]
pub struct Built {
    pub context: Context,
    pub proof: Proof,
    pub judgment: Judgment,
}

/// `tt` differs from `ff` at any `R`: from `u : tt [Bool] ff`, `v : x [R] x'`
/// and `w : y [R] y'`, conclude `x [R] y'`.
pub fn collapse(r: &RelType) -> Built {
    let var = |s: &str| Term::var(s);
    let mut context = Context::new();
    let entries = [
        ("u", Judgment::new(crate::syntax::combinators::tt(), bool_ty(), crate::syntax::combinators::ff())),
        ("v", Judgment::new(var("x"), r.clone(), var("x'"))),
        ("w", Judgment::new(var("y"), r.clone(), var("y'"))),
    ];
    for (u, j) in entries {
        context.push(name(u), j).expect("distinct proof variables");
    }
    let spine = Proof::app(
        Proof::app(Proof::ty_app(Proof::var("u"), r.clone()), Proof::var("v")),
        Proof::var("w"),
    );
    Built {
        context,
        proof: Proof::conv(var("x"), spine, var("y'")),
        judgment: Judgment::new(var("x"), r.clone(), var("y'")),
    }
}

/// Wraps `p` in a conversion only when a side actually changes.
fn convert(p: Proof, have: &Judgment, left: &Term, right: &Term) -> Proof {
    if &have.left == left && &have.right == right {
        p
    } else {
        Proof::conv(left.clone(), p, right.clone())
    }
}

/// From `q : m [R] t2` with `m` convertible to `t t1`, a proof of
/// `t1 [{t} * R] t2`.
pub fn promote_intro(t: &Term, t1: &Term, q: Proof, qj: &Judgment) -> Proof {
    let iota = Proof::Iota(t1.clone(), t.clone());
    let have = Judgment::new(t1.clone(), RelType::promote(t.clone()), Term::app(t.clone(), t1.clone()));
    let iota = convert(iota, &have, t1, &qj.left);
    Proof::pair(iota, q, qj.left.clone())
}

/// From `q : t [R] t2`, a proof of `t1 [[t] R] t2`.
pub fn int_typing_l(t: &Term, t1: &Term, q: Proof, qj: &Judgment) -> Proof {
    promote_intro(&Term::app(konst(), t.clone()), t1, q, qj)
}

/// From `q : t1 [R] t`, a proof of `t1 [R [t]] t2`.
pub fn int_typing_r(t: &Term, t2: &Term, q: Proof, qj: &Judgment) -> Proof {
    let kt = Term::app(konst(), t.clone());
    let iota = Proof::Iota(t2.clone(), kt.clone());
    let have = Judgment::new(t2.clone(), RelType::promote(kt.clone()), Term::app(kt, t2.clone()));
    let back = Proof::conv_i(convert(iota, &have, t2, &qj.right));
    Proof::pair(q, back, qj.right.clone())
}

/// From `q : m [R] m'` with `m ~ t t1` and `m' ~ t' t2`, a proof of
/// `t1 [t.R.t'] t2`.
pub fn conj_intro(t: &Term, t_: &Term, t1: &Term, t2: &Term, q: Proof, qj: &Judgment) -> Proof {
    let iota_r = Proof::Iota(t2.clone(), t_.clone());
    let have_r = Judgment::new(t2.clone(), RelType::promote(t_.clone()), Term::app(t_.clone(), t2.clone()));
    let back = Proof::conv_i(convert(iota_r, &have_r, t2, &qj.right));
    let inner = Proof::pair(q, back, qj.right.clone());
    let iota_l = Proof::Iota(t1.clone(), t.clone());
    let have_l = Judgment::new(t1.clone(), RelType::promote(t.clone()), Term::app(t.clone(), t1.clone()));
    Proof::pair(convert(iota_l, &have_l, t1, &qj.left), inner, qj.left.clone())
}

/// Subject and proof-variable names for a λ, fresh for everything around it.
pub fn fresh_binders(ctx: &Context, types: &[&RelType], terms: &[&Term]) -> (Name, Name, Name) {
    let mut avoid: BTreeSet<Name> = ctx.free_vars().terms;
    avoid.extend(ctx.proof_vars().cloned());
    for r in types {
        avoid.extend(r.free_term_vars());
    }
    for t in terms {
        avoid.extend(t.free_vars());
    }
    let mut supply = crate::syntax::NameSupply::avoiding(avoid);
    let x = supply.fresh("x");
    let x_ = supply.fresh("x'");
    let u = supply.fresh("u");
    (u, x, x_)
}

/// `t1 [R <= R'] t2` from a transformer that, given `u : x [R] x'`, proves
/// `x [R'] x'`.
pub fn subset_intro(
    ctx: &Context,
    r: &RelType,
    r2: &RelType,
    t1: &Term,
    t2: &Term,
    body: impl FnOnce(&Name, &Name, &Name) -> Proof,
) -> Proof {
    let (u, x, x_) = fresh_binders(ctx, &[r, r2], &[t1, t2]);
    let lam = Proof::Lam {
        body: Box::new(body(&u, &x, &x_)),
        var: u,
        left: x,
        ty: r.clone(),
        right: x_,
    };
    let ki = Term::app(konst(), id());
    let have = Judgment::new(id(), RelType::arrow(r.clone(), r2.clone()), id());
    let want_l = Term::app(ki.clone(), t1.clone());
    let want_r = Term::app(ki.clone(), t2.clone());
    let q = convert(lam, &have, &want_l, &want_r);
    let qj = Judgment::new(want_l, have.ty, want_r);
    conj_intro(&ki, &ki, t1, t2, q, &qj)
}

/// `t1 [R => R'] t2` from a transformer that, given `u : x [R] x'` with `x`,
/// `x'` fresh, proves `t1 [R'] t2`.
pub fn impprod_intro(
    ctx: &Context,
    r: &RelType,
    r2: &RelType,
    t1: &Term,
    t2: &Term,
    body: impl FnOnce(&Name, &Name, &Name) -> Proof,
) -> Proof {
    let (u, x, x_) = fresh_binders(ctx, &[r, r2], &[t1, t2]);
    let have = Judgment::new(
        Term::lam_named(&x, t1.clone()),
        RelType::arrow(r.clone(), r2.clone()),
        Term::lam_named(&x_, t2.clone()),
    );
    let lam = Proof::Lam {
        body: Box::new(body(&u, &x, &x_)),
        var: u,
        left: x,
        ty: r.clone(),
        right: x_,
    };
    let want_l = Term::app(konst(), t1.clone());
    let want_r = Term::app(konst(), t2.clone());
    let q = convert(lam, &have, &want_l, &want_r);
    let qj = Judgment::new(want_l, have.ty, want_r);
    conj_intro(&konst(), &konst(), t1, t2, q, &qj)
}

/// Subset elimination needs ρ to rewrite in the direction the rule does not
/// provide, so no proof is produced.
#[cfg(feature = "experimental")]
pub fn subset_elim(_sub: Proof, _arg: Proof) -> Result<Proof, super::PreludeError> {
    Err(super::PreludeError::Underivable(
        "subset elimination needs rho in the reverse direction".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::check;
    use crate::prelude::derived::DerivedForm;

    const FUEL: usize = 1000;

    fn assumption(ctx: &mut Context, u: &str, j: Judgment) {
        ctx.push(name(u), j).unwrap();
    }

    #[test]
    fn collapse_checks() {
        let b = collapse(&RelType::var("R"));
        assert_eq!(check(&b.context, &b.proof, FUEL).unwrap(), b.judgment);
    }

    #[test]
    fn promotion_and_internal_typing() {
        let r = RelType::var("R");
        let (t, t1, t2) = (Term::var("t"), Term::var("a"), Term::var("b"));
        let mut ctx = Context::new();
        assumption(&mut ctx, "q", Judgment::new(Term::app(t.clone(), t1.clone()), r.clone(), t2.clone()));
        let qj = ctx.lookup("q").unwrap().clone();
        let p = promote_intro(&t, &t1, Proof::var("q"), &qj);
        let j = check(&ctx, &p, FUEL).unwrap();
        assert_eq!(j, Judgment::new(t1.clone(), RelType::comp(RelType::promote(t.clone()), r.clone()), t2.clone()));

        let mut ctx = Context::new();
        assumption(&mut ctx, "q", Judgment::new(t.clone(), r.clone(), t2.clone()));
        let qj = ctx.lookup("q").unwrap().clone();
        let p = int_typing_l(&t, &t1, Proof::var("q"), &qj);
        let want = DerivedForm::IntTypeL(t.clone(), r.clone()).expand().unwrap();
        assert_eq!(check(&ctx, &p, FUEL).unwrap(), Judgment::new(t1.clone(), want, t2.clone()));

        let mut ctx = Context::new();
        assumption(&mut ctx, "q", Judgment::new(t1.clone(), r.clone(), t.clone()));
        let qj = ctx.lookup("q").unwrap().clone();
        let p = int_typing_r(&t, &t2, Proof::var("q"), &qj);
        let want = DerivedForm::IntTypeR(r.clone(), t.clone()).expand().unwrap();
        assert_eq!(check(&ctx, &p, FUEL).unwrap(), Judgment::new(t1, want, t2));
    }

    #[test]
    fn subset_reflexive() {
        let r = RelType::var("R");
        let (t1, t2) = (Term::var("a"), Term::var("b"));
        let ctx = Context::new();
        let p = subset_intro(&ctx, &r, &r, &t1, &t2, |u, _, _| Proof::Var(u.clone()));
        let want = DerivedForm::Subset(r.clone(), r).expand().unwrap();
        assert_eq!(check(&ctx, &p, FUEL).unwrap(), Judgment::new(t1, want, t2));
    }

    #[test]
    fn implicit_product() {
        let (r, s) = (RelType::var("R"), RelType::var("S"));
        let (t1, t2) = (Term::var("a"), Term::var("b"));
        let mut ctx = Context::new();
        assumption(&mut ctx, "k", Judgment::new(t1.clone(), s.clone(), t2.clone()));
        let p = impprod_intro(&ctx, &r, &s, &t1, &t2, |_, _, _| Proof::var("k"));
        let want = DerivedForm::ImpProd(r, s).expand().unwrap();
        assert_eq!(check(&ctx, &p, FUEL).unwrap(), Judgment::new(t1, want, t2));
    }
}
