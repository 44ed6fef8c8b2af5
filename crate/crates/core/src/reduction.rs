//! Fuel-bounded beta-eta reduction and the conversion check.
//!
//! The strategy is leftmost-outermost, with beta preferred over eta at a
//! node. It is normalizing: whenever a term has a beta-eta normal form,
//! iterating [`step`] reaches it. Because normal forms are unique, two
//! terms that both normalize are convertible iff their normal forms are
//! alpha-equal, which is what [`conv_check`] decides within its fuel.

use crate::syntax::Term;

/// Fuel used when nothing else is configured.
pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalStatus {
    Normal,
    FuelExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizeResult {
    pub term: Term,
    pub status: NormalStatus,
    pub steps_used: usize,
}

impl NormalizeResult {
    pub fn is_normal(&self) -> bool {
        self.status == NormalStatus::Normal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConvResult {
    Equal,
    Distinct,
    Undecided,
}

fn shift(t: &Term, by: isize, cutoff: usize) -> Term {
    match t {
        Term::Free(_) => t.clone(),
        Term::Bound(i) if *i >= cutoff => Term::Bound((*i as isize + by) as usize),
        Term::Bound(_) => t.clone(),
        Term::Lam(h, b) => Term::Lam(h.clone(), Box::new(shift(b, by, cutoff + 1))),
        Term::App(f, a) => Term::app(shift(f, by, cutoff), shift(a, by, cutoff)),
    }
}

/// Substitutes `arg` for index `depth` in `body` and lowers the indices
/// above it, i.e. the body of a contracted beta redex.
fn instantiate(body: &Term, arg: &Term, depth: usize) -> Term {
    match body {
        Term::Free(_) => body.clone(),
        Term::Bound(i) if *i == depth => shift(arg, depth as isize, 0),
        Term::Bound(i) if *i > depth => Term::Bound(i - 1),
        Term::Bound(_) => body.clone(),
        Term::Lam(h, b) => Term::Lam(h.clone(), Box::new(instantiate(b, arg, depth + 1))),
        Term::App(f, a) => Term::app(instantiate(f, arg, depth), instantiate(a, arg, depth)),
    }
}

fn uses_index(t: &Term, idx: usize) -> bool {
    match t {
        Term::Free(_) => false,
        Term::Bound(i) => *i == idx,
        Term::Lam(_, b) => uses_index(b, idx + 1),
        Term::App(f, a) => uses_index(f, idx) || uses_index(a, idx),
    }
}

fn eta_body(body: &Term) -> Option<&Term> {
    match body {
        Term::App(f, a) if matches!(**a, Term::Bound(0)) && !uses_index(f, 0) => Some(f),
        _ => None,
    }
}

/// One leftmost-outermost rewrite, or `None` if `t` is beta-eta normal.
pub fn step(t: &Term) -> Option<Term> {
    match t {
        Term::Free(_) | Term::Bound(_) => None,
        Term::App(f, a) => {
            if let Term::Lam(_, body) = &**f {
                return Some(instantiate(body, a, 0));
            }
            if let Some(f2) = step(f) {
                return Some(Term::App(Box::new(f2), a.clone()));
            }
            step(a).map(|a2| Term::App(f.clone(), Box::new(a2)))
        }
        Term::Lam(h, body) => {
            if let Some(f) = eta_body(body) {
                return Some(shift(f, -1, 0));
            }
            step(body).map(|b| Term::Lam(h.clone(), Box::new(b)))
        }
    }
}

/// Iterates [`step`] at most `fuel` times.
pub fn normalize(t: &Term, fuel: usize) -> NormalizeResult {
    let mut cur = t.clone();
    let mut used = 0;
    loop {
        match step(&cur) {
            None => {
                return NormalizeResult {
                    term: cur,
                    status: NormalStatus::Normal,
                    steps_used: used,
                }
            }
            Some(_) if used == fuel => {
                return NormalizeResult {
                    term: cur,
                    status: NormalStatus::FuelExhausted,
                    steps_used: used,
                }
            }
            Some(next) => {
                cur = next;
                used += 1;
            }
        }
    }
}

/// Decides `t1 =βη t2` with a total budget of `fuel` rewrite steps shared
/// between both sides.
pub fn conv_check(t1: &Term, t2: &Term, fuel: usize) -> ConvResult {
    if t1 == t2 {
        return ConvResult::Equal;
    }
    let n1 = normalize(t1, fuel);
    if !n1.is_normal() {
        return ConvResult::Undecided;
    }
    let n2 = normalize(t2, fuel - n1.steps_used);
    if !n2.is_normal() {
        return ConvResult::Undecided;
    }
    if n1.term == n2.term {
        ConvResult::Equal
    } else {
        ConvResult::Distinct
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::combinators::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn beta_step() {
        assert_eq!(step(&Term::app(id(), v("y"))), Some(v("y")));
    }

    #[test]
    fn eta_step() {
        let t = Term::lam("x", Term::app(v("f"), v("x")));
        assert_eq!(step(&t), Some(v("f")));
        // x occurs in the head: not an eta redex
        let t = Term::lam("x", Term::app(v("x"), v("x")));
        assert_eq!(step(&t), None);
    }

    #[test]
    fn tt_applied_steps_once() {
        let t = Term::apps(tt(), [v("a"), v("b")]);
        let once = step(&t).unwrap();
        assert_eq!(once, Term::app(Term::lam("y", v("a")), v("b")));
        assert_eq!(normalize(&t, 10).term, v("a"));
    }

    #[test]
    fn normalize_examples() {
        let r = normalize(&Term::apps(konst(), [id(), v("f")]), 10);
        assert_eq!(r.term, id());
        assert_eq!(r.status, NormalStatus::Normal);
        assert_eq!(r.steps_used, 2);

        let r = normalize(&omega(), 100);
        assert_eq!(r.status, NormalStatus::FuelExhausted);
        assert_eq!(r.steps_used, 100);

        let r = normalize(&id(), 0);
        assert_eq!(r, NormalizeResult { term: id(), status: NormalStatus::Normal, steps_used: 0 });
    }

    #[test]
    fn conv_examples() {
        assert_eq!(conv_check(&Term::apps(tt(), [v("x"), v("y")]), &v("x"), 5), ConvResult::Equal);
        let t = Term::lam("x", Term::app(id(), v("x")));
        assert_eq!(conv_check(&t, &id(), 10), ConvResult::Equal);
        assert_eq!(conv_check(&tt(), &ff(), 100), ConvResult::Distinct);
        assert_eq!(conv_check(&omega(), &id(), 1000), ConvResult::Undecided);
    }

    #[test]
    fn beta_under_binder_shifts_free_indices() {
        // \z. (\x. \y. x) z  -->  \z. \y. z
        let t = Term::lam("z", Term::app(konst(), v("z")));
        let expect = Term::lam("z", Term::lam("y", v("z")));
        assert_eq!(normalize(&t, 10).term, expect);
    }
}
