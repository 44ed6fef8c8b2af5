//! Relational types, locally nameless over type variables.

use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};

use super::name::{name, Name};
use super::term::Term;

#[derive(Debug, Clone)]
pub enum RelType {
    Free(Name),
    Bound(usize),
    Arrow(Box<RelType>, Box<RelType>),
    All(Name, Box<RelType>),
    Conv(Box<RelType>),
    Comp(Box<RelType>, Box<RelType>),
    Promote(Term),
}

impl PartialEq for RelType {
    fn eq(&self, other: &Self) -> bool {
        use RelType::*;
        match (self, other) {
            (Free(a), Free(b)) => a == b,
            (Bound(i), Bound(j)) => i == j,
            (Arrow(a, b), Arrow(c, d)) | (Comp(a, b), Comp(c, d)) => a == c && b == d,
            (All(_, a), All(_, b)) => a == b,
            (Conv(a), Conv(b)) => a == b,
            (Promote(s), Promote(t)) => s == t,
            _ => false,
        }
    }
}

impl Eq for RelType {}

impl Hash for RelType {
    fn hash<H: Hasher>(&self, state: &mut H) {
        use RelType::*;
        std::mem::discriminant(self).hash(state);
        match self {
            Free(n) => n.hash(state),
            Bound(i) => i.hash(state),
            Arrow(a, b) | Comp(a, b) => {
                a.hash(state);
                b.hash(state);
            }
            All(_, a) | Conv(a) => a.hash(state),
            Promote(t) => t.hash(state),
        }
    }
}

impl RelType {
    pub fn var(n: &str) -> RelType {
        RelType::Free(name(n))
    }

    pub fn arrow(a: RelType, b: RelType) -> RelType {
        RelType::Arrow(Box::new(a), Box::new(b))
    }

    pub fn comp(a: RelType, b: RelType) -> RelType {
        RelType::Comp(Box::new(a), Box::new(b))
    }

    pub fn conv(a: RelType) -> RelType {
        RelType::Conv(Box::new(a))
    }

    pub fn promote(t: Term) -> RelType {
        RelType::Promote(t)
    }

    /// `all X. body`, binding free occurrences of `X` in `body`.
    pub fn all(x: &str, body: RelType) -> RelType {
        let x = name(x);
        let body = body.close(&x, 0);
        RelType::All(x, Box::new(body))
    }

    pub fn all_named(x: &Name, body: RelType) -> RelType {
        let body = body.close(x, 0);
        RelType::All(x.clone(), Box::new(body))
    }

    pub(crate) fn close(&self, x: &Name, depth: usize) -> RelType {
        use RelType::*;
        match self {
            Free(n) if n == x => Bound(depth),
            Free(_) | Bound(_) | Promote(_) => self.clone(),
            Arrow(a, b) => RelType::arrow(a.close(x, depth), b.close(x, depth)),
            Comp(a, b) => RelType::comp(a.close(x, depth), b.close(x, depth)),
            All(h, b) => All(h.clone(), Box::new(b.close(x, depth + 1))),
            Conv(a) => RelType::conv(a.close(x, depth)),
        }
    }

    /// Instantiates the outermost bound type variable of a binder body.
    pub fn open(&self, with: &RelType) -> RelType {
        self.open_at(with, 0)
    }

    fn open_at(&self, with: &RelType, depth: usize) -> RelType {
        use RelType::*;
        match self {
            Bound(i) if *i == depth => with.clone(),
            Free(_) | Bound(_) | Promote(_) => self.clone(),
            Arrow(a, b) => RelType::arrow(a.open_at(with, depth), b.open_at(with, depth)),
            Comp(a, b) => RelType::comp(a.open_at(with, depth), b.open_at(with, depth)),
            All(h, b) => All(h.clone(), Box::new(b.open_at(with, depth + 1))),
            Conv(a) => RelType::conv(a.open_at(with, depth)),
        }
    }

    /// Free type variables.
    pub fn free_tvars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_tvars(&mut out);
        out
    }

    pub(crate) fn collect_tvars(&self, out: &mut BTreeSet<Name>) {
        use RelType::*;
        match self {
            Free(n) => {
                out.insert(n.clone());
            }
            Bound(_) | Promote(_) => {}
            Arrow(a, b) | Comp(a, b) => {
                a.collect_tvars(out);
                b.collect_tvars(out);
            }
            All(_, a) | Conv(a) => a.collect_tvars(out),
        }
    }

    /// Free term variables of promoted terms.
    pub fn free_term_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_term_vars(&mut out);
        out
    }

    pub(crate) fn collect_term_vars(&self, out: &mut BTreeSet<Name>) {
        use RelType::*;
        match self {
            Free(_) | Bound(_) => {}
            Promote(t) => t.collect_free(out),
            Arrow(a, b) | Comp(a, b) => {
                a.collect_term_vars(out);
                b.collect_term_vars(out);
            }
            All(_, a) | Conv(a) => a.collect_term_vars(out),
        }
    }

    pub fn has_free_tvar(&self, x: &str) -> bool {
        use RelType::*;
        match self {
            Free(n) => &**n == x,
            Bound(_) | Promote(_) => false,
            Arrow(a, b) | Comp(a, b) => a.has_free_tvar(x) || b.has_free_tvar(x),
            All(_, a) | Conv(a) => a.has_free_tvar(x),
        }
    }

    /// Capture-avoiding `[replacement/x]self` on type variables. Promotions
    /// are left untouched.
    pub fn subst_tvar(&self, x: &str, replacement: &RelType) -> RelType {
        use RelType::*;
        match self {
            Free(n) if &**n == x => replacement.clone(),
            Free(_) | Bound(_) | Promote(_) => self.clone(),
            Arrow(a, b) => RelType::arrow(a.subst_tvar(x, replacement), b.subst_tvar(x, replacement)),
            Comp(a, b) => RelType::comp(a.subst_tvar(x, replacement), b.subst_tvar(x, replacement)),
            All(h, b) => All(h.clone(), Box::new(b.subst_tvar(x, replacement))),
            Conv(a) => RelType::conv(a.subst_tvar(x, replacement)),
        }
    }

    /// Applies a term substitution to every promoted term.
    pub fn subst_terms(&self, sigma: &BTreeMap<Name, Term>) -> RelType {
        self.map_terms(&|t| t.subst_many(sigma))
    }

    pub fn map_terms(&self, f: &impl Fn(&Term) -> Term) -> RelType {
        use RelType::*;
        match self {
            Free(_) | Bound(_) => self.clone(),
            Promote(t) => Promote(f(t)),
            Arrow(a, b) => RelType::arrow(a.map_terms(f), b.map_terms(f)),
            Comp(a, b) => RelType::comp(a.map_terms(f), b.map_terms(f)),
            All(h, b) => All(h.clone(), Box::new(b.map_terms(f))),
            Conv(a) => RelType::conv(a.map_terms(f)),
        }
    }

    /// Renames free type variables (and binder hints) through `f`.
    pub fn map_tvar_names(&self, f: &impl Fn(&Name) -> Name) -> RelType {
        use RelType::*;
        match self {
            Free(n) => Free(f(n)),
            Bound(_) | Promote(_) => self.clone(),
            Arrow(a, b) => RelType::arrow(a.map_tvar_names(f), b.map_tvar_names(f)),
            Comp(a, b) => RelType::comp(a.map_tvar_names(f), b.map_tvar_names(f)),
            All(h, b) => All(f(h), Box::new(b.map_tvar_names(f))),
            Conv(a) => RelType::conv(a.map_tvar_names(f)),
        }
    }

    pub fn is_locally_closed(&self) -> bool {
        fn go(r: &RelType, depth: usize) -> bool {
            use RelType::*;
            match r {
                Free(_) => true,
                Bound(i) => *i < depth,
                Promote(t) => t.is_locally_closed(),
                Arrow(a, b) | Comp(a, b) => go(a, depth) && go(b, depth),
                All(_, a) => go(a, depth + 1),
                Conv(a) => go(a, depth),
            }
        }
        go(self, 0)
    }

    /// True for the System F fragment: no converse, composition or promotion.
    pub fn is_system_f(&self) -> bool {
        use RelType::*;
        match self {
            Free(_) | Bound(_) => true,
            Arrow(a, b) => a.is_system_f() && b.is_system_f(),
            All(_, a) => a.is_system_f(),
            Conv(_) | Comp(..) | Promote(_) => false,
        }
    }

    pub fn size(&self) -> usize {
        use RelType::*;
        match self {
            Free(_) | Bound(_) => 1,
            Promote(t) => 1 + t.size(),
            Arrow(a, b) | Comp(a, b) => 1 + a.size() + b.size(),
            All(_, a) | Conv(a) => 1 + a.size(),
        }
    }
}

/// Capture-avoiding `[replacement/tvar]target`.
pub fn subst_tvar(replacement: &RelType, tvar: &str, target: &RelType) -> RelType {
    target.subst_tvar(tvar, replacement)
}

/// Applies `sigma` to all terms contained in `target`.
pub fn subst_terms_in_type(sigma: &BTreeMap<Name, Term>, target: &RelType) -> RelType {
    target.subst_terms(sigma)
}
