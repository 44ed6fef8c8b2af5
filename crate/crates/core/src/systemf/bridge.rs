//! Erasure, projection to System F, and the embedding back into proofs.

use std::collections::BTreeSet;

use thiserror::Error;

use super::deriv::{validate_f, FDerivation, FError, FErrorKind};
use super::ftype::{fctx_tvars, FContext, FType};
use crate::kernel::{check, derive, Derivation, KernelError, Proof};
use crate::syntax::combinators::{id, pair};
use crate::syntax::{dotted, fresh, is_dotted, Context, Judgment, Name, RelType, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    SystemF(#[from] FError),
}

/// The untyped term underlying a proof.
pub fn erase_proof(p: &Proof) -> Term {
    match p {
        Proof::Var(u) => Term::Free(u.clone()),
        Proof::Lam { var, body, .. } => Term::lam_named(var, erase_proof(body)),
        Proof::App(f, a) => Term::app(erase_proof(f), erase_proof(a)),
        Proof::TyApp(q, _) | Proof::TyLam(_, q) | Proof::ConvI(q) | Proof::ConvE(q) => erase_proof(q),
        Proof::Conv { proof, .. } => erase_proof(proof),
        Proof::Iota(..) => id(),
        Proof::Rho { body, .. } => erase_proof(body),
        Proof::Pair { first, second, .. } => Term::apps(pair(), [erase_proof(first), erase_proof(second)]),
        Proof::Pi {
            scrutinee,
            left_proof,
            right_proof,
            body,
            ..
        } => Term::app(
            erase_proof(scrutinee),
            Term::lam_named(left_proof, Term::lam_named(right_proof, erase_proof(body))),
        ),
    }
}

/// `|R|`: converse dropped, composition to products, promotions to the
/// identity type.
pub fn project_type(r: &RelType) -> FType {
    let mut avoid = r.free_tvars();
    project_with(r, &mut avoid)
}

fn project_with(r: &RelType, avoid: &mut BTreeSet<Name>) -> FType {
    match r {
        RelType::Free(n) => FType::Free(n.clone()),
        RelType::Bound(i) => FType::Bound(*i),
        RelType::Arrow(a, b) => FType::arrow(project_with(a, avoid), project_with(b, avoid)),
        RelType::All(h, b) => {
            let x = fresh(h, avoid);
            avoid.insert(x.clone());
            let body = project_with(&b.open(&RelType::Free(x.clone())), avoid);
            FType::all_named(&x, body)
        }
        RelType::Conv(a) => project_with(a, avoid),
        RelType::Comp(a, b) => FType::product(project_with(a, avoid), project_with(b, avoid)),
        RelType::Promote(_) => FType::identity(),
    }
}

/// `|Γ|`: proof variables become term variables.
pub fn project_ctx(ctx: &Context) -> FContext {
    ctx.entries()
        .iter()
        .map(|e| (e.var.clone(), project_type(&e.judgment.ty)))
        .collect()
}

/// Builds a System F derivation of `|p| : |R|` under `|Γ|` from a checked
/// proof, following the projection theorem case by case.
pub fn project_derivation(ctx: &Context, p: &Proof, fuel: usize) -> Result<FDerivation, KernelError> {
    let d = derive(ctx, p, fuel)?;
    let mut fctx = project_ctx(ctx);
    Ok(Projector.go(&mut fctx, p, &d))
}

struct Projector;

fn taken_names(ctx: &FContext) -> BTreeSet<Name> {
    ctx.iter().map(|(x, _)| x.clone()).collect()
}

/// `λx.λy.λc. c x y : A → B → A × B`, closed, with binders and the
/// product variable fresh for `ctx`.
fn pair_derivation(ctx: &FContext, a: &FType, b: &FType) -> FDerivation {
    let names = taken_names(ctx);
    let mut avoid = names.clone();
    let x = fresh("x", &avoid);
    avoid.insert(x.clone());
    let y = fresh("y", &avoid);
    avoid.insert(y.clone());
    let c = fresh("c", &avoid);
    let mut tv = fctx_tvars(ctx);
    tv.extend(a.free_tvars());
    tv.extend(b.free_tvars());
    let z = fresh("Z", &tv);
    let zt = FType::Free(z.clone());
    let body = FDerivation::app(
        FDerivation::app(FDerivation::var(&c), FDerivation::var(&x)),
        FDerivation::var(&y),
    );
    FDerivation::abs(
        &x,
        a.clone(),
        FDerivation::abs(
            &y,
            b.clone(),
            FDerivation::gen(
                &z,
                FDerivation::abs(&c, FType::arrows([a.clone(), b.clone()], zt), body),
            ),
        ),
    )
}

/// `I : ∀X.X → X` with names fresh for `ctx`.
pub(crate) fn identity_derivation(ctx: &FContext) -> FDerivation {
    let x = fresh("x", &taken_names(ctx));
    let tx = fresh("X", &fctx_tvars(ctx));
    FDerivation::gen(&tx, FDerivation::abs(&x, FType::Free(tx.clone()), FDerivation::var(&x)))
}

impl Projector {
    fn go(&self, ctx: &mut FContext, p: &Proof, d: &Derivation) -> FDerivation {
        match p {
            Proof::Var(u) => FDerivation::var(u),
            Proof::Lam { var, ty, body, .. } => {
                let dom = project_type(ty);
                ctx.push((var.clone(), dom.clone()));
                let inner = self.go(ctx, body, &d.children[0]);
                ctx.pop();
                FDerivation::abs(var, dom, inner)
            }
            Proof::App(f, a) => FDerivation::app(
                self.go(ctx, f, &d.children[0]),
                self.go(ctx, a, &d.children[1]),
            ),
            Proof::TyApp(q, r) => FDerivation::inst(project_type(r), self.go(ctx, q, &d.children[0])),
            Proof::TyLam(x, q) => FDerivation::gen(x, self.go(ctx, q, &d.children[0])),
            Proof::Conv { proof, .. } => self.go(ctx, proof, &d.children[0]),
            Proof::ConvI(q) | Proof::ConvE(q) => self.go(ctx, q, &d.children[0]),
            Proof::Iota(..) => identity_derivation(ctx),
            Proof::Rho { body, .. } => self.go(ctx, body, &d.children[1]),
            Proof::Pair { first, second, .. } => {
                let a = project_type(&d.children[0].judgment.ty);
                let b = project_type(&d.children[1].judgment.ty);
                let mk = pair_derivation(ctx, &a, &b);
                FDerivation::app(
                    FDerivation::app(mk, self.go(ctx, first, &d.children[0])),
                    self.go(ctx, second, &d.children[1]),
                )
            }
            Proof::Pi {
                scrutinee,
                left_proof,
                right_proof,
                body,
                ..
            } => {
                let RelType::Comp(r1, r2) = &d.children[0].judgment.ty else {
                    unreachable!("checked scrutinee is a composition")
                };
                let (a, b) = (project_type(r1), project_type(r2));
                let result = project_type(&d.judgment.ty);
                let ds = self.go(ctx, scrutinee, &d.children[0]);
                ctx.push((left_proof.clone(), a.clone()));
                ctx.push((right_proof.clone(), b.clone()));
                let db = self.go(ctx, body, &d.children[1]);
                ctx.pop();
                ctx.pop();
                FDerivation::app(
                    FDerivation::inst(result, ds),
                    FDerivation::abs(left_proof, a, FDerivation::abs(right_proof, b, db)),
                )
            }
        }
    }
}

/// `ṫ`: every variable renamed through the dot injection.
pub fn dot_rename(t: &Term) -> Result<Term, FError> {
    let fv = t.free_vars();
    if let Some(x) = fv.iter().find(|x| fv.contains(&dotted(x))) {
        return Err(FError::new(
            FErrorKind::DottedCollision,
            format!("{x} and its dotted copy both occur in {t}"),
        ));
    }
    Ok(t.map_names(&|n| dotted(n)))
}

/// `⟨Δ⟩`: each `x : T` becomes the assumption `x : x [T] ẋ`.
pub fn embed_ctx(ctx: &FContext) -> Context {
    ctx.iter()
        .map(|(x, ty)| {
            (
                x.clone(),
                Judgment::new(Term::Free(x.clone()), ty.to_rel(), Term::Free(dotted(x))),
            )
        })
        .collect()
}

/// Turns a System F derivation of `t : T` into a proof of `t [T] ṫ` under
/// `⟨Δ⟩`.
pub fn embed_f(ctx: &FContext, d: &FDerivation) -> Result<(Context, Proof), FError> {
    validate_f(ctx, d)?;
    let mut names: Vec<Name> = ctx.iter().map(|(x, _)| x.clone()).collect();
    collect_abs(d, &mut names);
    if let Some(x) = names.iter().find(|x| is_dotted(x)) {
        return Err(FError::new(FErrorKind::DottedCollision, format!("{x} is already dotted")));
    }
    Ok((embed_ctx(ctx), embed_deriv(d)))
}

fn collect_abs(d: &FDerivation, out: &mut Vec<Name>) {
    if let FDerivation::Abs { var, .. } = d {
        out.push(var.clone());
    }
    for c in d.children() {
        collect_abs(c, out);
    }
}

fn embed_deriv(d: &FDerivation) -> Proof {
    match d {
        FDerivation::Var(x) => Proof::Var(x.clone()),
        FDerivation::Abs { var, domain, body } => Proof::Lam {
            var: var.clone(),
            left: var.clone(),
            ty: domain.to_rel(),
            right: dotted(var),
            body: Box::new(embed_deriv(body)),
        },
        FDerivation::App(f, a) => Proof::app(embed_deriv(f), embed_deriv(a)),
        FDerivation::Gen { tvar, body } => Proof::TyLam(tvar.clone(), Box::new(embed_deriv(body))),
        FDerivation::Inst { ty, body } => Proof::ty_app(embed_deriv(body), ty.to_rel()),
    }
}

/// Output of [`self_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfWitness {
    pub context: Context,
    pub proof: Proof,
    pub judgment: Judgment,
}

/// Projects a checked proof to System F and embeds it back, producing a
/// proof of `|p| [|R|] |p|̇` under `⟨|Γ|⟩`.
pub fn self_witness(ctx: &Context, p: &Proof, fuel: usize) -> Result<SelfWitness, BridgeError> {
    let d = project_derivation(ctx, p, fuel)?;
    let (context, proof) = embed_f(&project_ctx(ctx), &d)?;
    let judgment = check(&context, &proof, fuel)?;
    Ok(SelfWitness {
        context,
        proof,
        judgment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::combinators::tt;
    use crate::syntax::name;

    const FUEL: usize = 1000;

    fn x() -> RelType {
        RelType::var("X")
    }

    fn id_proof() -> Proof {
        Proof::ty_lam("X", Proof::lam("u", "x", x(), "x'", Proof::var("u")))
    }

    #[test]
    fn erasure_clauses() {
        assert_eq!(erase_proof(&Proof::Iota(Term::var("t"), Term::var("f"))), id());
        assert_eq!(erase_proof(&Proof::ty_lam("X", Proof::var("u"))), Term::var("u"));
        let rho = Proof::rho("x", Term::var("x"), Term::var("x"), Proof::var("e"), Proof::var("b"));
        assert_eq!(erase_proof(&rho), Term::var("b"));
    }

    #[test]
    fn projection_clauses() {
        assert_eq!(project_type(&RelType::promote(Term::var("t"))), FType::identity());
        let b = RelType::all("X", RelType::arrow(x(), RelType::arrow(x(), x())));
        assert_eq!(project_type(&RelType::conv(b.clone())), FType::from_rel(&b).unwrap());
        let comp = project_type(&RelType::comp(x(), RelType::var("Y")));
        assert_eq!(comp, FType::product(FType::var("X"), FType::var("Y")));
        // a composition under a binder
        let r = RelType::all("X", RelType::comp(x(), x()));
        let expect = FType::all("X", FType::product(FType::var("X"), FType::var("X")));
        assert_eq!(project_type(&r), expect);
    }

    #[test]
    fn projects_identity() {
        let d = project_derivation(&Context::new(), &id_proof(), FUEL).unwrap();
        let (t, ty) = validate_f(&vec![], &d).unwrap();
        assert_eq!(t, id());
        assert_eq!(ty, FType::identity());
    }

    #[test]
    fn projects_pair_and_pi() {
        let ctx: Context = [
            (name("p"), Judgment::new(Term::var("a"), x(), Term::var("m"))),
            (name("q"), Judgment::new(Term::var("m"), RelType::var("Y"), Term::var("b"))),
        ]
        .into_iter()
        .collect();
        let pr = Proof::pair(Proof::var("p"), Proof::var("q"), Term::var("m"));
        let rebuilt = Proof::pair(Proof::var("u1"), Proof::var("u2"), Term::var("z"));
        let pi = Proof::pi(pr.clone(), "z", "u1", "u2", rebuilt);
        for p in [pr, pi] {
            let j = check(&ctx, &p, FUEL).unwrap();
            let d = project_derivation(&ctx, &p, FUEL).unwrap();
            let (t, ty) = validate_f(&project_ctx(&ctx), &d).unwrap();
            assert_eq!(t, erase_proof(&p));
            assert_eq!(ty, project_type(&j.ty));
        }
    }

    #[test]
    fn dotting() {
        let t = Term::lam("x", Term::app(Term::var("x"), Term::var("y")));
        let d = dot_rename(&t).unwrap();
        assert_eq!(d.free_vars().into_iter().collect::<Vec<_>>(), vec![dotted("y")]);
        assert_eq!(dot_rename(&tt()).unwrap(), tt());
        let clash = Term::app(Term::var("y"), Term::Free(dotted("y")));
        assert_eq!(dot_rename(&clash).unwrap_err().kind, FErrorKind::DottedCollision);
    }

    #[test]
    fn embeds_variable_and_closed_terms() {
        let ctx = vec![(name("x"), FType::var("T"))];
        let (g, p) = embed_f(&ctx, &FDerivation::var(&name("x"))).unwrap();
        let j = check(&g, &p, FUEL).unwrap();
        assert_eq!(j, Judgment::new(Term::var("x"), RelType::var("T"), Term::Free(dotted("x"))));

        let id_d = identity_derivation(&vec![]);
        let (g, p) = embed_f(&vec![], &id_d).unwrap();
        let j = check(&g, &p, FUEL).unwrap();
        assert_eq!(j.left, j.right);
        assert_eq!(p, id_proof_dotted());
    }

    fn id_proof_dotted() -> Proof {
        Proof::TyLam(
            name("X"),
            Box::new(Proof::Lam {
                var: name("x"),
                left: name("x"),
                ty: x(),
                right: dotted("x"),
                body: Box::new(Proof::var("x")),
            }),
        )
    }

    #[test]
    fn self_witness_of_iota() {
        let w = self_witness(&Context::new(), &Proof::Iota(Term::var("a"), Term::var("f")), FUEL).unwrap();
        assert_eq!(w.judgment.left, id());
        assert_eq!(w.judgment.ty, FType::identity().to_rel());
        // closed subject: both sides alpha-equal
        assert_eq!(w.judgment.right, id());
    }
}
