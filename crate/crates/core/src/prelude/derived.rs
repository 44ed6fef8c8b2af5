//! Derived type formers and their expansion into core relational types.

use std::collections::BTreeSet;

use super::datatypes::gen_in;
use super::PreludeError;
use crate::reduction::normalize;
use crate::syntax::combinators::{id, konst};
use crate::syntax::{fresh, name, Name, RelType, Term};

/// Steps allowed when normalizing generated in-terms.
const IN_FUEL: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivedForm {
    /// `[t]R`
    IntTypeL(Term, RelType),
    /// `R[t]`
    IntTypeR(RelType, Term),
    /// `t1.R.t2`
    Conj(Term, RelType, Term),
    /// `t..R`
    DConj(Term, RelType),
    /// `R <= R'`
    Subset(RelType, RelType),
    /// `R => R'`
    ImpProd(RelType, RelType),
    /// `R ~~ R'`
    RelEq(RelType, RelType),
    Prod(RelType, RelType),
    Sum(RelType, RelType),
    Unit,
    Bool,
    Nat,
    DParam(Name, RelType),
    DInd(Name, RelType),
    Rec(Name, RelType),
}

fn k_of(t: Term) -> RelType {
    RelType::promote(Term::app(konst(), t))
}

fn binder_avoiding(base: &str, types: &[&RelType]) -> Name {
    let mut avoid = BTreeSet::new();
    for r in types {
        avoid.extend(r.free_tvars());
    }
    fresh(base, &avoid)
}

fn system_f(r: &RelType, what: &str) -> Result<(), PreludeError> {
    if r.is_system_f() {
        Ok(())
    } else {
        Err(PreludeError::MalformedParameter(format!(
            "{what} needs a System F parameter, got {r}"
        )))
    }
}

/// `∀X.(R → X) → X`
pub fn d_param(x: &Name, r: &RelType) -> RelType {
    let xv = RelType::Free(x.clone());
    RelType::all_named(x, RelType::arrow(RelType::arrow(r.clone(), xv.clone()), xv))
}

impl DerivedForm {
    pub fn expand(&self) -> Result<RelType, PreludeError> {
        use DerivedForm::*;
        Ok(match self {
            IntTypeL(t, r) => RelType::comp(k_of(t.clone()), r.clone()),
            IntTypeR(r, t) => RelType::comp(r.clone(), RelType::conv(k_of(t.clone()))),
            Conj(t1, r, t2) => RelType::comp(
                RelType::promote(t1.clone()),
                RelType::comp(r.clone(), RelType::conv(RelType::promote(t2.clone()))),
            ),
            DConj(t, r) => Conj(t.clone(), r.clone(), t.clone()).expand()?,
            Subset(a, b) => DConj(Term::app(konst(), id()), RelType::arrow(a.clone(), b.clone())).expand()?,
            ImpProd(a, b) => DConj(konst(), RelType::arrow(a.clone(), b.clone())).expand()?,
            RelEq(a, b) => RelType::comp(
                Subset(a.clone(), b.clone()).expand()?,
                Subset(b.clone(), a.clone()).expand()?,
            ),
            Prod(a, b) => {
                let x = binder_avoiding("X", &[a, b]);
                let xv = RelType::Free(x.clone());
                let k = RelType::arrow(a.clone(), RelType::arrow(b.clone(), xv.clone()));
                RelType::all_named(&x, RelType::arrow(k, xv))
            }
            Sum(a, b) => {
                let x = binder_avoiding("X", &[a, b]);
                let xv = RelType::Free(x.clone());
                RelType::all_named(
                    &x,
                    RelType::arrow(
                        RelType::arrow(a.clone(), xv.clone()),
                        RelType::arrow(RelType::arrow(b.clone(), xv.clone()), xv),
                    ),
                )
            }
            Unit => RelType::all("X", RelType::arrow(RelType::var("X"), RelType::var("X"))),
            Bool => {
                let x = RelType::var("X");
                RelType::all("X", RelType::arrow(x.clone(), RelType::arrow(x.clone(), x)))
            }
            Nat => DParam(name("X"), nat_functor()).expand()?,
            DParam(x, r) => {
                system_f(r, "Dparam")?;
                d_param(x, r)
            }
            DInd(x, r) => {
                system_f(r, "Dind")?;
                let xv = RelType::Free(x.clone());
                let inn = normalize(&gen_in(x, r)?, IN_FUEL).term;
                let guarded = IntTypeL(inn.clone(), IntTypeR(RelType::arrow(r.clone(), xv.clone()), inn).expand()?)
                    .expand()?;
                RelType::all_named(x, ImpProd(guarded, xv).expand()?)
            }
            Rec(x, r) => {
                let xv = RelType::Free(x.clone());
                let body = ImpProd(Subset(r.clone(), xv.clone()).expand()?, xv).expand()?;
                RelType::all_named(x, body)
            }
        })
    }
}

/// `1 + X`
pub fn nat_functor() -> RelType {
    DerivedForm::Sum(unit_ty(), RelType::var("X"))
        .expand()
        .expect("sum of System F types")
}

pub fn unit_ty() -> RelType {
    DerivedForm::Unit.expand().expect("closed form")
}

pub fn bool_ty() -> RelType {
    DerivedForm::Bool.expand().expect("closed form")
}

pub fn nat_ty() -> RelType {
    DerivedForm::Nat.expand().expect("closed form")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{is_symmetric, match_dconj};

    fn x() -> RelType {
        RelType::var("X")
    }

    #[test]
    fn internalized_typing() {
        let t = Term::var("t");
        let r = RelType::var("R");
        assert_eq!(
            DerivedForm::IntTypeL(t.clone(), r.clone()).expand().unwrap(),
            RelType::comp(RelType::promote(Term::app(konst(), t)), r)
        );
    }

    #[test]
    fn nat_shape() {
        let y = RelType::var("Y");
        let one_plus_x = RelType::all(
            "Y",
            RelType::arrow(
                RelType::arrow(unit_ty(), y.clone()),
                RelType::arrow(RelType::arrow(x(), y.clone()), y),
            ),
        );
        assert_eq!(nat_functor(), one_plus_x);
        let expect = RelType::all("X", RelType::arrow(RelType::arrow(one_plus_x, x()), x()));
        assert_eq!(nat_ty(), expect);
    }

    #[test]
    fn subset_is_a_conjugation() {
        let s = DerivedForm::Subset(x(), x()).expand().unwrap();
        let (t, body) = match_dconj(&s).unwrap();
        assert_eq!(t, &Term::app(konst(), id()));
        assert_eq!(body, &RelType::arrow(x(), x()));
        assert_eq!(is_symmetric(&s, 100), Ok(true));
    }

    #[test]
    fn rec_does_not_capture() {
        let r = RelType::arrow(RelType::var("Y"), x());
        let e = DerivedForm::Rec(name("X"), r).expand().unwrap();
        assert!(e.free_tvars().contains("Y"));
        assert!(!e.free_tvars().contains("X"));
        // a product over a free X keeps it free
        let p = DerivedForm::Prod(x(), x()).expand().unwrap();
        assert!(p.free_tvars().contains("X"));
    }

    #[test]
    fn parameters_must_be_system_f() {
        let bad = RelType::conv(x());
        assert!(matches!(
            DerivedForm::DParam(name("X"), bad.clone()).expand(),
            Err(PreludeError::MalformedParameter(_))
        ));
        assert!(DerivedForm::DInd(name("X"), bad.clone()).expand().is_err());
        assert!(DerivedForm::Rec(name("X"), bad).expand().is_ok());
    }

    #[test]
    fn dind_embeds_normal_in_term() {
        let d = DerivedForm::DInd(name("X"), nat_functor()).expand().unwrap();
        assert!(d.is_locally_closed());
        assert!(d.free_term_vars().is_empty());
    }
}
