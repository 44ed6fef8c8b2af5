use std::collections::BTreeMap;

use crate::syntax::{Name, NameSupply, RelType, Term};

/// Proof terms. Binders are named; the kernel enforces freshness of every
/// binder explicitly when the rule that introduces it is applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Proof {
    /// `u`
    Var(Name),
    /// `fun (u : x [R] x') => p`
    Lam {
        var: Name,
        left: Name,
        ty: RelType,
        right: Name,
        body: Box<Proof>,
    },
    /// `p p'`
    App(Box<Proof>, Box<Proof>),
    /// `p {R}`
    TyApp(Box<Proof>, RelType),
    /// `Fun X => p`
    TyLam(Name, Box<Proof>),
    /// `t <| p |> t'`
    Conv {
        left: Term,
        proof: Box<Proof>,
        right: Term,
    },
    /// `conv_i p`
    ConvI(Box<Proof>),
    /// `conv_e p`
    ConvE(Box<Proof>),
    /// `iota {t, t'}`
    Iota(Term, Term),
    /// `rho {x. t1, t2} p - p'`
    Rho {
        var: Name,
        left: Term,
        right: Term,
        eq: Box<Proof>,
        body: Box<Proof>,
    },
    /// `(p, p' via t)`
    Pair {
        first: Box<Proof>,
        second: Box<Proof>,
        mid: Term,
    },
    /// `pi p - x u v. p'`
    Pi {
        scrutinee: Box<Proof>,
        var: Name,
        left_proof: Name,
        right_proof: Name,
        body: Box<Proof>,
    },
}

impl Proof {
    pub fn var(u: &str) -> Proof {
        Proof::Var(crate::syntax::name(u))
    }

    pub fn lam(var: &str, left: &str, ty: RelType, right: &str, body: Proof) -> Proof {
        use crate::syntax::name;
        Proof::Lam {
            var: name(var),
            left: name(left),
            ty,
            right: name(right),
            body: Box::new(body),
        }
    }

    pub fn app(p: Proof, q: Proof) -> Proof {
        Proof::App(Box::new(p), Box::new(q))
    }

    pub fn ty_app(p: Proof, r: RelType) -> Proof {
        Proof::TyApp(Box::new(p), r)
    }

    pub fn ty_lam(x: &str, p: Proof) -> Proof {
        Proof::TyLam(crate::syntax::name(x), Box::new(p))
    }

    pub fn conv(left: Term, p: Proof, right: Term) -> Proof {
        Proof::Conv {
            left,
            proof: Box::new(p),
            right,
        }
    }

    pub fn conv_i(p: Proof) -> Proof {
        Proof::ConvI(Box::new(p))
    }

    pub fn conv_e(p: Proof) -> Proof {
        Proof::ConvE(Box::new(p))
    }

    pub fn rho(var: &str, left: Term, right: Term, eq: Proof, body: Proof) -> Proof {
        Proof::Rho {
            var: crate::syntax::name(var),
            left,
            right,
            eq: Box::new(eq),
            body: Box::new(body),
        }
    }

    pub fn pair(first: Proof, second: Proof, mid: Term) -> Proof {
        Proof::Pair {
            first: Box::new(first),
            second: Box::new(second),
            mid,
        }
    }

    pub fn pi(scrutinee: Proof, var: &str, u: &str, v: &str, body: Proof) -> Proof {
        use crate::syntax::name;
        Proof::Pi {
            scrutinee: Box::new(scrutinee),
            var: name(var),
            left_proof: name(u),
            right_proof: name(v),
            body: Box::new(body),
        }
    }

    /// Number of proof constructors.
    pub fn size(&self) -> usize {
        match self {
            Proof::Var(_) | Proof::Iota(..) => 1,
            Proof::Lam { body, .. } | Proof::TyLam(_, body) => 1 + body.size(),
            Proof::TyApp(p, _) | Proof::ConvI(p) | Proof::ConvE(p) => 1 + p.size(),
            Proof::Conv { proof, .. } => 1 + proof.size(),
            Proof::App(p, q) => 1 + p.size() + q.size(),
            Proof::Rho { eq, body, .. } => 1 + eq.size() + body.size(),
            Proof::Pair { first, second, .. } => 1 + first.size() + second.size(),
            Proof::Pi { scrutinee, body, .. } => 1 + scrutinee.size() + body.size(),
        }
    }

    /// Applies a term substitution to every term the proof mentions, leaving
    /// variables bound by the proof itself alone. The range of `sigma` must
    /// not mention the proof's binders.
    pub fn subst_terms(&self, sigma: &BTreeMap<Name, Term>) -> Proof {
        let without = |names: &[&Name]| {
            let mut s = sigma.clone();
            for n in names {
                s.remove(*n);
            }
            s
        };
        match self {
            Proof::Var(_) => self.clone(),
            Proof::Lam { var, left, ty, right, body } => {
                let inner = without(&[left, right]);
                Proof::Lam {
                    var: var.clone(),
                    left: left.clone(),
                    ty: ty.subst_terms(sigma),
                    right: right.clone(),
                    body: Box::new(body.subst_terms(&inner)),
                }
            }
            Proof::App(p, q) => Proof::app(p.subst_terms(sigma), q.subst_terms(sigma)),
            Proof::TyApp(p, r) => Proof::ty_app(p.subst_terms(sigma), r.subst_terms(sigma)),
            Proof::TyLam(x, p) => Proof::TyLam(x.clone(), Box::new(p.subst_terms(sigma))),
            Proof::Conv { left, proof, right } => Proof::conv(
                left.subst_many(sigma),
                proof.subst_terms(sigma),
                right.subst_many(sigma),
            ),
            Proof::ConvI(p) => Proof::conv_i(p.subst_terms(sigma)),
            Proof::ConvE(p) => Proof::conv_e(p.subst_terms(sigma)),
            Proof::Iota(t, u) => Proof::Iota(t.subst_many(sigma), u.subst_many(sigma)),
            Proof::Rho { var, left, right, eq, body } => {
                let inner = without(&[var]);
                Proof::Rho {
                    var: var.clone(),
                    left: left.subst_many(&inner),
                    right: right.subst_many(&inner),
                    eq: Box::new(eq.subst_terms(sigma)),
                    body: Box::new(body.subst_terms(sigma)),
                }
            }
            Proof::Pair { first, second, mid } => Proof::pair(
                first.subst_terms(sigma),
                second.subst_terms(sigma),
                mid.subst_many(sigma),
            ),
            Proof::Pi { scrutinee, var, left_proof, right_proof, body } => Proof::Pi {
                scrutinee: Box::new(scrutinee.subst_terms(sigma)),
                var: var.clone(),
                left_proof: left_proof.clone(),
                right_proof: right_proof.clone(),
                body: Box::new(body.subst_terms(&without(&[var]))),
            },
        }
    }

    /// Renames every binder of the proof to a name drawn from `supply`,
    /// consistently updating the scopes they govern.
    pub fn rename_binders(&self, supply: &mut NameSupply) -> Proof {
        Renamer::default().go(self, supply)
    }
}

#[derive(Clone, Default)]
struct Renamer {
    terms: BTreeMap<Name, Term>,
    tvars: BTreeMap<Name, RelType>,
    proofs: BTreeMap<Name, Name>,
}

impl Renamer {
    fn term(&self, t: &Term) -> Term {
        t.subst_many(&self.terms)
    }

    fn ty(&self, r: &RelType) -> RelType {
        let mut out = r.subst_terms(&self.terms);
        for (x, y) in &self.tvars {
            out = out.subst_tvar(x, y);
        }
        out
    }

    fn with_term(&self, old: &Name, new: &Name) -> Renamer {
        let mut r = self.clone();
        r.terms.insert(old.clone(), Term::Free(new.clone()));
        r
    }

    fn go(&self, p: &Proof, supply: &mut NameSupply) -> Proof {
        match p {
            Proof::Var(u) => Proof::Var(self.proofs.get(u).cloned().unwrap_or_else(|| u.clone())),
            Proof::Lam { var, left, ty, right, body } => {
                let (nu, nl, nr) = (supply.fresh(var), supply.fresh(left), supply.fresh(right));
                let mut inner = self.with_term(left, &nl).with_term(right, &nr);
                inner.proofs.insert(var.clone(), nu.clone());
                Proof::Lam {
                    var: nu,
                    left: nl,
                    ty: self.ty(ty),
                    right: nr,
                    body: Box::new(inner.go(body, supply)),
                }
            }
            Proof::App(a, b) => Proof::app(self.go(a, supply), self.go(b, supply)),
            Proof::TyApp(a, r) => Proof::ty_app(self.go(a, supply), self.ty(r)),
            Proof::TyLam(x, body) => {
                let nx = supply.fresh(x);
                let mut inner = self.clone();
                inner.tvars.insert(x.clone(), RelType::Free(nx.clone()));
                Proof::TyLam(nx, Box::new(inner.go(body, supply)))
            }
            Proof::Conv { left, proof, right } => {
                Proof::conv(self.term(left), self.go(proof, supply), self.term(right))
            }
            Proof::ConvI(a) => Proof::conv_i(self.go(a, supply)),
            Proof::ConvE(a) => Proof::conv_e(self.go(a, supply)),
            Proof::Iota(t, u) => Proof::Iota(self.term(t), self.term(u)),
            Proof::Rho { var, left, right, eq, body } => {
                let nx = supply.fresh(var);
                let guide = self.with_term(var, &nx);
                Proof::Rho {
                    var: nx,
                    left: guide.term(left),
                    right: guide.term(right),
                    eq: Box::new(self.go(eq, supply)),
                    body: Box::new(self.go(body, supply)),
                }
            }
            Proof::Pair { first, second, mid } => {
                Proof::pair(self.go(first, supply), self.go(second, supply), self.term(mid))
            }
            Proof::Pi { scrutinee, var, left_proof, right_proof, body } => {
                let (nx, nu, nv) = (
                    supply.fresh(var),
                    supply.fresh(left_proof),
                    supply.fresh(right_proof),
                );
                let mut inner = self.with_term(var, &nx);
                inner.proofs.insert(left_proof.clone(), nu.clone());
                inner.proofs.insert(right_proof.clone(), nv.clone());
                Proof::Pi {
                    scrutinee: Box::new(self.go(scrutinee, supply)),
                    var: nx,
                    left_proof: nu,
                    right_proof: nv,
                    body: Box::new(inner.go(body, supply)),
                }
            }
        }
    }
}
