//! Untyped lambda terms in locally nameless form.
//!
//! Bound variables are de Bruijn indices; free variables are names. Every
//! binder keeps its surface name as a display hint only, so structural
//! equality (which ignores hints) is alpha-equivalence and substitution of
//! a locally closed term for a free name can never capture.

use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};

use super::name::{name, Name};

#[derive(Debug, Clone)]
pub enum Term {
    Free(Name),
    Bound(usize),
    Lam(Name, Box<Term>),
    App(Box<Term>, Box<Term>),
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Term::Free(a), Term::Free(b)) => a == b,
            (Term::Bound(i), Term::Bound(j)) => i == j,
            (Term::Lam(_, a), Term::Lam(_, b)) => a == b,
            (Term::App(f, a), Term::App(g, b)) => f == g && a == b,
            _ => false,
        }
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::mem::discriminant(self).hash(state);
        match self {
            Term::Free(n) => n.hash(state),
            Term::Bound(i) => i.hash(state),
            Term::Lam(_, b) => b.hash(state),
            Term::App(f, a) => {
                f.hash(state);
                a.hash(state);
            }
        }
    }
}

impl Term {
    pub fn var(n: &str) -> Term {
        Term::Free(name(n))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    /// Left-nested application spine `head a1 a2 ...`.
    pub fn apps<I: IntoIterator<Item = Term>>(head: Term, args: I) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    /// `\x. body`, binding the free occurrences of `x` in `body`.
    pub fn lam(x: &str, body: Term) -> Term {
        let x = name(x);
        let body = body.close(&x, 0);
        Term::Lam(x, Box::new(body))
    }

    pub fn lam_named(x: &Name, body: Term) -> Term {
        let body = body.close(x, 0);
        Term::Lam(x.clone(), Box::new(body))
    }

    /// Replaces free occurrences of `x` with the bound index `depth`.
    pub(crate) fn close(&self, x: &Name, depth: usize) -> Term {
        match self {
            Term::Free(n) if n == x => Term::Bound(depth),
            Term::Free(_) | Term::Bound(_) => self.clone(),
            Term::Lam(h, b) => Term::Lam(h.clone(), Box::new(b.close(x, depth + 1))),
            Term::App(f, a) => Term::app(f.close(x, depth), a.close(x, depth)),
        }
    }

    /// Instantiates the outermost bound variable of a binder body with a
    /// locally closed term.
    pub fn open(&self, with: &Term) -> Term {
        self.open_at(with, 0)
    }

    fn open_at(&self, with: &Term, depth: usize) -> Term {
        match self {
            Term::Bound(i) if *i == depth => with.clone(),
            Term::Free(_) | Term::Bound(_) => self.clone(),
            Term::Lam(h, b) => Term::Lam(h.clone(), Box::new(b.open_at(with, depth + 1))),
            Term::App(f, a) => Term::app(f.open_at(with, depth), a.open_at(with, depth)),
        }
    }

    /// True iff no de Bruijn index escapes its binder.
    pub fn is_locally_closed(&self) -> bool {
        fn go(t: &Term, depth: usize) -> bool {
            match t {
                Term::Free(_) => true,
                Term::Bound(i) => *i < depth,
                Term::Lam(_, b) => go(b, depth + 1),
                Term::App(f, a) => go(f, depth) && go(a, depth),
            }
        }
        go(self, 0)
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    pub(crate) fn collect_free(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Free(n) => {
                out.insert(n.clone());
            }
            Term::Bound(_) => {}
            Term::Lam(_, b) => b.collect_free(out),
            Term::App(f, a) => {
                f.collect_free(out);
                a.collect_free(out);
            }
        }
    }

    pub fn has_free(&self, x: &str) -> bool {
        match self {
            Term::Free(n) => &**n == x,
            Term::Bound(_) => false,
            Term::Lam(_, b) => b.has_free(x),
            Term::App(f, a) => f.has_free(x) || a.has_free(x),
        }
    }

    /// Capture-avoiding `[replacement/x]self`. `replacement` must be locally
    /// closed, which every top-level term is.
    pub fn subst(&self, x: &str, replacement: &Term) -> Term {
        match self {
            Term::Free(n) if &**n == x => replacement.clone(),
            Term::Free(_) | Term::Bound(_) => self.clone(),
            Term::Lam(h, b) => Term::Lam(h.clone(), Box::new(b.subst(x, replacement))),
            Term::App(f, a) => Term::app(f.subst(x, replacement), a.subst(x, replacement)),
        }
    }

    /// Simultaneous substitution of locally closed terms for free names.
    pub fn subst_many(&self, sigma: &BTreeMap<Name, Term>) -> Term {
        if sigma.is_empty() {
            return self.clone();
        }
        match self {
            Term::Free(n) => sigma.get(n).cloned().unwrap_or_else(|| self.clone()),
            Term::Bound(_) => self.clone(),
            Term::Lam(h, b) => Term::Lam(h.clone(), Box::new(b.subst_many(sigma))),
            Term::App(f, a) => Term::app(f.subst_many(sigma), a.subst_many(sigma)),
        }
    }

    /// Renames every variable, free names through `f` and binder hints
    /// through `f` as well.
    pub fn map_names(&self, f: &impl Fn(&Name) -> Name) -> Term {
        match self {
            Term::Free(n) => Term::Free(f(n)),
            Term::Bound(i) => Term::Bound(*i),
            Term::Lam(h, b) => Term::Lam(f(h), Box::new(b.map_names(f))),
            Term::App(g, a) => Term::app(g.map_names(f), a.map_names(f)),
        }
    }

    /// Binder hints in the term, in no particular order.
    pub fn binder_hints(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Free(_) | Term::Bound(_) => {}
            Term::Lam(h, b) => {
                out.insert(h.clone());
                b.binder_hints(out);
            }
            Term::App(f, a) => {
                f.binder_hints(out);
                a.binder_hints(out);
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Free(_) | Term::Bound(_) => 1,
            Term::Lam(_, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
        }
    }
}

/// Capture-avoiding `[replacement/var]target`.
pub fn subst_term(replacement: &Term, var: &str, target: &Term) -> Term {
    target.subst(var, replacement)
}

/// Commonly used closed terms.
pub mod combinators {
    use super::Term;

    /// `\x. x`
    pub fn id() -> Term {
        Term::lam("x", Term::var("x"))
    }

    /// `\x. \y. x`
    pub fn konst() -> Term {
        Term::lam("x", Term::lam("y", Term::var("x")))
    }

    /// `\x. \y. x`, the same term as `konst`.
    pub fn tt() -> Term {
        konst()
    }

    /// `\x. \y. y`
    pub fn ff() -> Term {
        Term::lam("x", Term::lam("y", Term::var("y")))
    }

    /// `t o t' := \x. t (t' x)`
    pub fn compose(t: Term, u: Term) -> Term {
        let x = crate::syntax::name::fresh("x", &{
            let mut s = t.free_vars();
            s.extend(u.free_vars());
            s
        });
        Term::lam_named(&x, Term::app(t, Term::app(u, Term::Free(x.clone()))))
    }

    /// `\x. \y. \c. c x y`
    pub fn pair() -> Term {
        Term::lam(
            "x",
            Term::lam("y", Term::lam("c", Term::apps(Term::var("c"), [Term::var("x"), Term::var("y")]))),
        )
    }

    /// `(\x. x x) (\x. x x)`
    pub fn omega() -> Term {
        let w = Term::lam("x", Term::app(Term::var("x"), Term::var("x")));
        Term::app(w.clone(), w)
    }
}

#[cfg(test)]
mod tests {
    use super::combinators::*;
    use super::*;

    #[test]
    fn alpha_equivalence_ignores_hints() {
        assert_eq!(Term::lam("x", Term::var("x")), Term::lam("y", Term::var("y")));
        assert_ne!(tt(), ff());
        assert_ne!(Term::lam("x", Term::var("y")), Term::lam("x", Term::var("z")));
    }

    #[test]
    fn subst_without_capture_possibility() {
        // [z/y](\x. y) = \x. z
        let t = Term::lam("x", Term::var("y"));
        assert_eq!(subst_term(&Term::var("z"), "y", &t), Term::lam("x", Term::var("z")));
    }

    #[test]
    fn subst_is_capture_avoiding() {
        // [x/y](\x. y) must be \x'. x, not the identity.
        let t = Term::lam("x", Term::var("y"));
        let r = subst_term(&Term::var("x"), "y", &t);
        assert_eq!(r, Term::lam("w", Term::var("x")));
        assert_ne!(r, id());
    }

    #[test]
    fn subst_spine() {
        // [tt/b](b u v) = tt u v
        let t = Term::apps(Term::var("b"), [Term::var("u"), Term::var("v")]);
        assert_eq!(
            subst_term(&tt(), "b", &t),
            Term::apps(tt(), [Term::var("u"), Term::var("v")])
        );
    }

    #[test]
    fn free_vars_of_lambda() {
        let t = Term::lam("x", Term::app(Term::var("x"), Term::var("y")));
        assert_eq!(t.free_vars(), [name("y")].into_iter().collect());
    }

    #[test]
    fn open_close_roundtrip() {
        let body = Term::app(Term::var("x"), Term::var("y"));
        let lam = Term::lam("x", body.clone());
        let Term::Lam(_, b) = &lam else { unreachable!() };
        assert_eq!(b.open(&Term::var("x")), body);
        assert!(lam.is_locally_closed());
        assert!(!b.is_locally_closed());
    }
}
