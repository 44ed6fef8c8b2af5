use std::collections::{BTreeMap, BTreeSet};

use super::name::Name;
use super::term::Term;
use super::types::RelType;

/// `left [ty] right`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Judgment {
    pub left: Term,
    pub ty: RelType,
    pub right: Term,
}

impl Judgment {
    pub fn new(left: Term, ty: RelType, right: Term) -> Self {
        Judgment { left, ty, right }
    }

    pub fn free_vars(&self) -> FreeVars {
        let mut fv = FreeVars::default();
        fv.add_term(&self.left);
        fv.add_term(&self.right);
        fv.add_type(&self.ty);
        fv
    }

    pub fn subst_terms(&self, sigma: &BTreeMap<Name, Term>) -> Judgment {
        Judgment {
            left: self.left.subst_many(sigma),
            ty: self.ty.subst_terms(sigma),
            right: self.right.subst_many(sigma),
        }
    }
}

/// One assumption `u : left [ty] right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub var: Name,
    pub judgment: Judgment,
}

/// Ordered assumptions with pairwise distinct proof variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Context {
    entries: Vec<Entry>,
}

impl Context {
    pub fn new() -> Self {
        Context::default()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, u: &str) -> Option<&Judgment> {
        self.entries
            .iter()
            .find(|e| &*e.var == u)
            .map(|e| &e.judgment)
    }

    pub fn contains(&self, u: &str) -> bool {
        self.lookup(u).is_some()
    }

    /// Extends the context. Returns `None` if `u` is already bound.
    pub fn extended(&self, u: Name, judgment: Judgment) -> Option<Context> {
        if self.contains(&u) {
            return None;
        }
        let mut entries = self.entries.clone();
        entries.push(Entry { var: u, judgment });
        Some(Context { entries })
    }

    pub fn push(&mut self, u: Name, judgment: Judgment) -> Result<(), Name> {
        if self.contains(&u) {
            return Err(u);
        }
        self.entries.push(Entry { var: u, judgment });
        Ok(())
    }

    pub fn insert_at(&mut self, at: usize, u: Name, judgment: Judgment) -> Result<(), Name> {
        if self.contains(&u) {
            return Err(u);
        }
        let at = at.min(self.entries.len());
        self.entries.insert(at, Entry { var: u, judgment });
        Ok(())
    }

    pub fn free_vars(&self) -> FreeVars {
        let mut fv = FreeVars::default();
        for e in &self.entries {
            fv.add_term(&e.judgment.left);
            fv.add_term(&e.judgment.right);
            fv.add_type(&e.judgment.ty);
        }
        fv
    }

    pub fn proof_vars(&self) -> impl Iterator<Item = &Name> {
        self.entries.iter().map(|e| &e.var)
    }

    pub fn subst_terms(&self, sigma: &BTreeMap<Name, Term>) -> Context {
        Context {
            entries: self
                .entries
                .iter()
                .map(|e| Entry {
                    var: e.var.clone(),
                    judgment: e.judgment.subst_terms(sigma),
                })
                .collect(),
        }
    }
}

impl FromIterator<(Name, Judgment)> for Context {
    /// Panics on duplicate proof variables.
    fn from_iter<I: IntoIterator<Item = (Name, Judgment)>>(iter: I) -> Self {
        let mut ctx = Context::new();
        for (u, j) in iter {
            ctx.push(u, j).expect("duplicate proof variable");
        }
        ctx
    }
}

/// Free term variables and free type variables of a syntactic entity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FreeVars {
    pub terms: BTreeSet<Name>,
    pub types: BTreeSet<Name>,
}

impl FreeVars {
    pub fn add_term(&mut self, t: &Term) {
        t.collect_free(&mut self.terms);
    }

    pub fn add_type(&mut self, r: &RelType) {
        r.collect_tvars(&mut self.types);
        r.collect_term_vars(&mut self.terms);
    }

    pub fn union(mut self, other: FreeVars) -> FreeVars {
        self.terms.extend(other.terms);
        self.types.extend(other.types);
        self
    }
}

/// Anything whose free variables can be computed.
pub trait HasFreeVars {
    fn free_vars_of(&self) -> FreeVars;
}

impl HasFreeVars for Term {
    fn free_vars_of(&self) -> FreeVars {
        FreeVars {
            terms: self.free_vars(),
            types: BTreeSet::new(),
        }
    }
}

impl HasFreeVars for RelType {
    fn free_vars_of(&self) -> FreeVars {
        let mut fv = FreeVars::default();
        fv.add_type(self);
        fv
    }
}

impl HasFreeVars for Context {
    fn free_vars_of(&self) -> FreeVars {
        self.free_vars()
    }
}

impl HasFreeVars for Judgment {
    fn free_vars_of(&self) -> FreeVars {
        self.free_vars()
    }
}

pub fn free_vars<E: HasFreeVars>(e: &E) -> FreeVars {
    e.free_vars_of()
}

/// Alpha-equivalence. Structural equality on the nameless core.
pub fn alpha_eq<E: PartialEq>(a: &E, b: &E) -> bool {
    a == b
}
