use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::syntax::{fresh, name, Name, RelType};

/// System F types, locally nameless like [`RelType`].
#[derive(Debug, Clone)]
pub enum FType {
    Free(Name),
    Bound(usize),
    Arrow(Box<FType>, Box<FType>),
    All(Name, Box<FType>),
}

impl PartialEq for FType {
    fn eq(&self, other: &Self) -> bool {
        use FType::*;
        match (self, other) {
            (Free(a), Free(b)) => a == b,
            (Bound(i), Bound(j)) => i == j,
            (Arrow(a, b), Arrow(c, d)) => a == c && b == d,
            (All(_, a), All(_, b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for FType {}

impl Hash for FType {
    fn hash<H: Hasher>(&self, state: &mut H) {
        use FType::*;
        std::mem::discriminant(self).hash(state);
        match self {
            Free(n) => n.hash(state),
            Bound(i) => i.hash(state),
            Arrow(a, b) => {
                a.hash(state);
                b.hash(state);
            }
            All(_, b) => b.hash(state),
        }
    }
}

impl FType {
    pub fn var(x: &str) -> FType {
        FType::Free(name(x))
    }

    pub fn arrow(a: FType, b: FType) -> FType {
        FType::Arrow(Box::new(a), Box::new(b))
    }

    pub fn arrows<I: IntoIterator<Item = FType>>(args: I, result: FType) -> FType {
        let args: Vec<_> = args.into_iter().collect();
        args.into_iter().rev().fold(result, |acc, a| FType::arrow(a, acc))
    }

    pub fn all(x: &str, body: FType) -> FType {
        FType::all_named(&name(x), body)
    }

    pub fn all_named(x: &Name, body: FType) -> FType {
        FType::All(x.clone(), Box::new(body.close(x, 0)))
    }

    fn close(&self, x: &Name, depth: usize) -> FType {
        match self {
            FType::Free(n) if n == x => FType::Bound(depth),
            FType::Free(_) | FType::Bound(_) => self.clone(),
            FType::Arrow(a, b) => FType::arrow(a.close(x, depth), b.close(x, depth)),
            FType::All(h, b) => FType::All(h.clone(), Box::new(b.close(x, depth + 1))),
        }
    }

    /// Instantiates the outermost bound variable of a binder body.
    pub fn open(&self, with: &FType) -> FType {
        self.open_at(with, 0)
    }

    fn open_at(&self, with: &FType, depth: usize) -> FType {
        match self {
            FType::Bound(i) if *i == depth => with.clone(),
            FType::Free(_) | FType::Bound(_) => self.clone(),
            FType::Arrow(a, b) => FType::arrow(a.open_at(with, depth), b.open_at(with, depth)),
            FType::All(h, b) => FType::All(h.clone(), Box::new(b.open_at(with, depth + 1))),
        }
    }

    pub fn free_tvars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<Name>) {
        match self {
            FType::Free(n) => {
                out.insert(n.clone());
            }
            FType::Bound(_) => {}
            FType::Arrow(a, b) => {
                a.collect(out);
                b.collect(out);
            }
            FType::All(_, b) => b.collect(out),
        }
    }

    /// `[repl/x]self`; capture is impossible because binders are nameless.
    pub fn subst(&self, x: &str, repl: &FType) -> FType {
        match self {
            FType::Free(n) if &**n == x => repl.clone(),
            FType::Free(_) | FType::Bound(_) => self.clone(),
            FType::Arrow(a, b) => FType::arrow(a.subst(x, repl), b.subst(x, repl)),
            FType::All(h, b) => FType::All(h.clone(), Box::new(b.subst(x, repl))),
        }
    }

    /// Opens a binder with a name fresh for `avoid` and the body.
    pub fn open_fresh(hint: &Name, body: &FType, avoid: &BTreeSet<Name>) -> (Name, FType) {
        let mut taken = avoid.clone();
        taken.extend(body.free_tvars());
        let x = fresh(hint, &taken);
        (x.clone(), body.open(&FType::Free(x)))
    }

    pub fn to_rel(&self) -> RelType {
        match self {
            FType::Free(n) => RelType::Free(n.clone()),
            FType::Bound(i) => RelType::Bound(*i),
            FType::Arrow(a, b) => RelType::arrow(a.to_rel(), b.to_rel()),
            FType::All(h, b) => RelType::All(h.clone(), Box::new(b.to_rel())),
        }
    }

    /// The System F fragment of relational types.
    pub fn from_rel(r: &RelType) -> Option<FType> {
        Some(match r {
            RelType::Free(n) => FType::Free(n.clone()),
            RelType::Bound(i) => FType::Bound(*i),
            RelType::Arrow(a, b) => FType::arrow(FType::from_rel(a)?, FType::from_rel(b)?),
            RelType::All(h, b) => FType::All(h.clone(), Box::new(FType::from_rel(b)?)),
            RelType::Conv(_) | RelType::Comp(..) | RelType::Promote(_) => return None,
        })
    }

    /// `∀X.X → X`
    pub fn identity() -> FType {
        FType::all("X", FType::arrow(FType::var("X"), FType::var("X")))
    }

    /// `∀Z.(a → b → Z) → Z`, with `Z` fresh.
    pub fn product(a: FType, b: FType) -> FType {
        let mut avoid = a.free_tvars();
        avoid.extend(b.free_tvars());
        let z = fresh("Z", &avoid);
        let zt = FType::Free(z.clone());
        FType::all_named(&z, FType::arrow(FType::arrows([a, b], zt.clone()), zt))
    }
}

impl fmt::Display for FType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_rel().fmt(f)
    }
}

/// A System F typing context.
pub type FContext = Vec<(Name, FType)>;

pub fn fctx_lookup<'a>(ctx: &'a FContext, x: &str) -> Option<&'a FType> {
    ctx.iter().rev().find(|(n, _)| &**n == x).map(|(_, t)| t)
}

pub fn fctx_tvars(ctx: &FContext) -> BTreeSet<Name> {
    ctx.iter().flat_map(|(_, t)| t.free_tvars()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_rel() {
        let t = FType::all("X", FType::arrow(FType::var("X"), FType::var("Y")));
        assert_eq!(FType::from_rel(&t.to_rel()), Some(t));
        assert_eq!(FType::from_rel(&RelType::conv(RelType::var("X"))), None);
    }

    #[test]
    fn product_avoids_capture() {
        let p = FType::product(FType::var("Z"), FType::var("Y"));
        assert!(p.free_tvars().contains("Z"));
        assert_eq!(p.to_string(), "all Z1. (Z -> Y -> Z1) -> Z1");
    }
}
