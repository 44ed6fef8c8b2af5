//! The standard library: every definition comes with a System F derivation,
//! which is validated, embedded as a relational proof and re-checked by the
//! kernel.

use super::datatypes::{
    gen_fmap, gen_fmap_deriv, gen_fold, gen_fold_deriv, gen_in, gen_in_deriv, gen_rebuild, gen_rebuild_deriv,
    weaken_all,
};
use super::derived::{bool_ty, nat_functor, nat_ty, unit_ty, DerivedForm};
use super::PreludeError;
use crate::analysis::Polarity;
use crate::kernel::{check, render_proof, Proof};
use crate::par::{self, Exec};
use crate::reduction::DEFAULT_FUEL;
use crate::syntax::combinators::{compose, ff, id, konst, pair, tt};
use crate::syntax::{name, render_term, Context, Judgment, Name, RelType, Term};
use crate::systemf::{embed_f, validate_f, FContext, FDerivation, FType};

/// One checked library entry.
#[derive(Debug, Clone)]
pub struct StdEntry {
    pub name: &'static str,
    /// Surface definition, in terms of earlier entries.
    pub source: &'static str,
    /// Surface form of the type, in terms of the library's named types.
    pub ty_source: &'static str,
    pub term: Term,
    pub ty: RelType,
    pub derivation: FDerivation,
    pub context: Context,
    pub proof: Proof,
    pub judgment: Judgment,
}

#[derive(Debug, Clone)]
pub struct Stdlib {
    /// Named types, in definition order.
    pub types: Vec<(&'static str, &'static str, RelType)>,
    pub entries: Vec<StdEntry>,
}

impl Stdlib {
    pub fn get(&self, n: &str) -> Option<&StdEntry> {
        self.entries.iter().find(|e| e.name == n)
    }
}

struct Recipe {
    name: &'static str,
    source: &'static str,
    ty_source: &'static str,
    build: fn() -> Result<(Term, FDerivation), PreludeError>,
}

fn tv(x: &str) -> FType {
    FType::var(x)
}

fn fty(r: &RelType) -> FType {
    FType::from_rel(r).expect("library types are System F types")
}

fn var(x: &str) -> FDerivation {
    FDerivation::var(&name(x))
}

fn abs(x: &str, ty: FType, body: FDerivation) -> FDerivation {
    FDerivation::abs(&name(x), ty, body)
}

fn gen(x: &str, body: FDerivation) -> FDerivation {
    FDerivation::gen(&name(x), body)
}

fn inst(ty: FType, body: FDerivation) -> FDerivation {
    FDerivation::inst(ty, body)
}

fn app(f: FDerivation, a: FDerivation) -> FDerivation {
    FDerivation::app(f, a)
}

fn x() -> Name {
    name("X")
}

fn sum(a: FType, b: FType) -> FType {
    fty(&DerivedForm::Sum(a.to_rel(), b.to_rel()).expand().expect("System F arguments"))
}

fn i_deriv() -> FDerivation {
    gen("X", abs("x", tv("X"), var("x")))
}

fn k_deriv() -> FDerivation {
    gen("A", gen("B", abs("x", tv("A"), abs("y", tv("B"), var("x")))))
}

fn inl_term() -> Term {
    Term::lam("a", Term::lam("x", Term::lam("y", Term::app(Term::var("x"), Term::var("a")))))
}

fn inr_term() -> Term {
    Term::lam("b", Term::lam("x", Term::lam("y", Term::app(Term::var("y"), Term::var("b")))))
}

/// `∀A.∀B.A → A + B`, or the right injection.
fn inj_deriv(left: bool) -> FDerivation {
    let (a, b) = (tv("A"), tv("B"));
    let (arg, ty) = if left { ("a", a.clone()) } else { ("b", b.clone()) };
    let k = if left { "x" } else { "y" };
    let body = abs(
        "x",
        FType::arrow(a.clone(), tv("X")),
        abs("y", FType::arrow(b.clone(), tv("X")), app(var(k), var(arg))),
    );
    gen("A", gen("B", abs(arg, ty, gen("X", body))))
}

fn nat_f() -> FType {
    fty(&nat_ty())
}

fn in_deriv() -> Result<FDerivation, PreludeError> {
    gen_in_deriv(&x(), &nat_functor())
}

fn in_term() -> Result<Term, PreludeError> {
    gen_in(&x(), &nat_functor())
}

/// `inj{1}{Nat}`
fn inj_nat(left: bool) -> FDerivation {
    inst(nat_f(), inst(fty(&unit_ty()), inj_deriv(left)))
}

fn succ_deriv() -> Result<FDerivation, PreludeError> {
    let ctx: FContext = vec![(name("p"), nat_f())];
    let inn = weaken_all(&ctx, &in_deriv()?)?;
    let inr = weaken_all(&ctx, &inj_nat(false))?;
    Ok(abs("p", nat_f(), app(inn, app(inr, var("p")))))
}

fn succ_term() -> Result<Term, PreludeError> {
    Ok(compose(in_term()?, inr_term()))
}

fn specs() -> Vec<Recipe> {
    vec![
        Recipe {
            name: "I",
            source: "\\x. x",
            ty_source: "all X. X -> X",
            build: || Ok((id(), i_deriv())),
        },
        Recipe {
            name: "K",
            source: "\\x. \\y. x",
            ty_source: "all A. all B. A -> B -> A",
            build: || Ok((konst(), k_deriv())),
        },
        Recipe {
            name: "tt",
            source: "\\x. \\y. x",
            ty_source: "Bool",
            build: || Ok((tt(), gen("X", abs("x", tv("X"), abs("y", tv("X"), var("x")))))),
        },
        Recipe {
            name: "ff",
            source: "\\x. \\y. y",
            ty_source: "Bool",
            build: || Ok((ff(), gen("X", abs("x", tv("X"), abs("y", tv("X"), var("y")))))),
        },
        Recipe {
            name: "unit",
            source: "I",
            ty_source: "Unit",
            build: || Ok((id(), i_deriv())),
        },
        Recipe {
            name: "inl",
            source: "\\a. \\x. \\y. x a",
            ty_source: "all A. all B. A -> Sum(A, B)",
            build: || Ok((inl_term(), inj_deriv(true))),
        },
        Recipe {
            name: "inr",
            source: "\\b. \\x. \\y. y b",
            ty_source: "all A. all B. B -> Sum(A, B)",
            build: || Ok((inr_term(), inj_deriv(false))),
        },
        Recipe {
            name: "pair",
            source: "\\x. \\y. \\c. c x y",
            ty_source: "all A. all B. A -> B -> Prod(A, B)",
            build: || {
                let (a, b) = (tv("A"), tv("B"));
                let k = FType::arrows([a.clone(), b.clone()], tv("Z"));
                let body = gen("Z", abs("c", k, app(app(var("c"), var("x")), var("y"))));
                Ok((pair(), gen("A", gen("B", abs("x", a, abs("y", b, body))))))
            },
        },
        Recipe {
            name: "case",
            source: "\\n. \\m. \\c. c n m",
            ty_source: "all A. all B. all X. (A -> X) -> (B -> X) -> Sum(A, B) -> X",
            build: || {
                let (a, b, xv) = (tv("A"), tv("B"), tv("X"));
                let body = app(app(inst(xv.clone(), var("c")), var("n")), var("m"));
                let d = abs(
                    "n",
                    FType::arrow(a.clone(), xv.clone()),
                    abs("m", FType::arrow(b.clone(), xv), abs("c", sum(a, b), body)),
                );
                Ok((pair(), gen("A", gen("B", gen("X", d)))))
            },
        },
        Recipe {
            name: "fold",
            source: "\\a. \\x. x a",
            ty_source: "all X. (Sum(Unit, X) -> X) -> Nat -> X",
            build: || Ok((gen_fold(), gen_fold_deriv(&x(), &nat_functor())?)),
        },
        Recipe {
            name: "fmap",
            source: "",
            ty_source: "(Xpos -> Xneg) -> Sum(Unit, Xpos) -> Sum(Unit, Xneg)",
            build: || {
                let d = gen_fmap_deriv(&x(), &nat_functor(), Polarity::Plus)?;
                Ok((gen_fmap(&x(), &nat_functor())?, d.derivation))
            },
        },
        Recipe {
            name: "in",
            source: "\\x. \\a. a (fmap (fold a) x)",
            ty_source: "Sum(Unit, Nat) -> Nat",
            build: || Ok((in_term()?, in_deriv()?)),
        },
        Recipe {
            name: "zero",
            source: "in (inl unit)",
            ty_source: "Nat",
            build: || {
                let d = app(in_deriv()?, app(inj_nat(true), i_deriv()));
                Ok((Term::app(in_term()?, Term::app(inl_term(), id())), d))
            },
        },
        Recipe {
            name: "succ",
            source: "\\x. in (inr x)",
            ty_source: "Nat -> Nat",
            build: || Ok((succ_term()?, succ_deriv()?)),
        },
        Recipe {
            name: "add",
            source: "\\n. \\m. n (\\c. c (K m) succ)",
            ty_source: "Nat -> Nat -> Nat",
            build: || {
                let nat = nat_f();
                let one = fty(&unit_ty());
                let one_plus_nat = fty(&nat_functor()).subst("X", &nat);
                let ctx: FContext = vec![
                    (name("n"), nat.clone()),
                    (name("m"), nat.clone()),
                    (name("c"), one_plus_nat.clone()),
                ];
                let succ = weaken_all(&ctx, &succ_deriv()?)?;
                let k = weaken_all(&ctx, &k_deriv())?;
                let k_m = app(inst(one, inst(nat.clone(), k)), var("m"));
                let alg = abs("c", one_plus_nat, app(app(inst(nat.clone(), var("c")), k_m), succ));
                let d = abs("n", nat.clone(), abs("m", nat.clone(), app(inst(nat, var("n")), alg)));
                let (n, m, c) = (Term::var("n"), Term::var("m"), Term::var("c"));
                let alg = Term::lam("c", Term::apps(c, [Term::app(konst(), m), succ_term()?]));
                Ok((Term::lam("n", Term::lam("m", Term::app(n, alg))), d))
            },
        },
        Recipe {
            name: "rebuild",
            source: "fold in",
            ty_source: "Nat -> Nat",
            build: || {
                Ok((
                    gen_rebuild(&x(), &nat_functor())?,
                    gen_rebuild_deriv(&x(), &nat_functor())?,
                ))
            },
        },
    ]
}

fn named_types() -> Vec<(&'static str, &'static str, RelType)> {
    vec![
        ("Unit", "all X. X -> X", unit_ty()),
        ("Bool", "all X. X -> X -> X", bool_ty()),
        ("Nat", "Dparam(X, Sum(Unit, X))", nat_ty()),
    ]
}

fn expected_type(n: &str) -> RelType {
    let (a, b, xv) = (RelType::var("A"), RelType::var("B"), RelType::var("X"));
    let sum = |l: RelType, r: RelType| DerivedForm::Sum(l, r).expand().expect("System F arguments");
    let prod = |l: RelType, r: RelType| DerivedForm::Prod(l, r).expand().expect("System F arguments");
    let arrows = |args: Vec<RelType>, res: RelType| args.into_iter().rev().fold(res, |acc, t| RelType::arrow(t, acc));
    let nat = nat_ty();
    let one_plus = |t: RelType| sum(unit_ty(), t);
    match n {
        "I" | "unit" => unit_ty(),
        "K" => RelType::all("A", RelType::all("B", arrows(vec![a.clone(), b.clone()], a))),
        "tt" | "ff" => bool_ty(),
        "inl" => RelType::all("A", RelType::all("B", RelType::arrow(a.clone(), sum(a, b)))),
        "inr" => RelType::all("A", RelType::all("B", RelType::arrow(b.clone(), sum(a, b)))),
        "pair" => RelType::all("A", RelType::all("B", arrows(vec![a.clone(), b.clone()], prod(a, b)))),
        "case" => RelType::all(
            "A",
            RelType::all(
                "B",
                RelType::all(
                    "X",
                    arrows(
                        vec![RelType::arrow(a.clone(), xv.clone()), RelType::arrow(b.clone(), xv.clone()), sum(a, b)],
                        xv,
                    ),
                ),
            ),
        ),
        "fold" => RelType::all("X", arrows(vec![RelType::arrow(one_plus(xv.clone()), xv.clone()), nat], xv)),
        "fmap" => {
            let (p, q) = (RelType::var("Xpos"), RelType::var("Xneg"));
            arrows(vec![RelType::arrow(p.clone(), q.clone()), one_plus(p)], one_plus(q))
        }
        "in" => RelType::arrow(one_plus(nat.clone()), nat),
        "zero" => nat,
        "succ" | "rebuild" => RelType::arrow(nat.clone(), nat),
        "add" => arrows(vec![nat.clone(), nat.clone()], nat),
        other => unreachable!("no library entry {other}"),
    }
}

fn elaborate(spec: &Recipe) -> Result<StdEntry, PreludeError> {
    let (term, derivation) = (spec.build)()?;
    let (subject, fty) = validate_f(&vec![], &derivation)?;
    if subject != term {
        return Err(PreludeError::Precondition(format!(
            "{}: derivation concludes {subject}, expected {term}",
            spec.name
        )));
    }
    let ty = expected_type(spec.name);
    if fty.to_rel() != ty {
        return Err(PreludeError::Precondition(format!("{}: derivation has type {fty}, expected {ty}", spec.name)));
    }
    let (context, proof) = embed_f(&vec![], &derivation)?;
    let judgment = check(&context, &proof, DEFAULT_FUEL)?;
    let expect = Judgment::new(term.clone(), ty.clone(), term.clone());
    if judgment != expect {
        return Err(PreludeError::Precondition(format!("{}: kernel concluded {judgment}", spec.name)));
    }
    Ok(StdEntry {
        name: spec.name,
        source: spec.source,
        ty_source: spec.ty_source,
        term,
        ty,
        derivation,
        context,
        proof,
        judgment,
    })
}

/// Builds and checks the whole library. Entries are independent and are
/// elaborated with `exec`.
pub fn stdlib(exec: Exec) -> Result<Stdlib, PreludeError> {
    let specs = specs();
    let entries = par::map(exec, &specs, elaborate).into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Stdlib {
        types: named_types(),
        entries,
    })
}

/// The library as a script in the surface language.
pub fn render_prelude(lib: &Stdlib) -> String {
    let mut out = String::from("-- reltt standard prelude; generated by `reltt_core::prelude::render_prelude`\n\n");
    for (n, src, _) in &lib.types {
        out.push_str(&format!("type {n} := {src}\n"));
    }
    out.push('\n');
    for e in &lib.entries {
        let src = if e.source.is_empty() { render_term(&e.term) } else { e.source.to_string() };
        out.push_str(&format!("def {} := {}\n", e.name, src));
    }
    for e in &lib.entries {
        out.push_str(&format!(
            "\nproof {n} : {n} [{}] {n} :=\n  {}\n",
            e.ty_source,
            render_proof(&e.proof),
            n = e.name
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{conv_check, ConvResult};

    #[test]
    fn library_checks() {
        let lib = stdlib(Exec::Sequential).unwrap();
        assert_eq!(lib.entries.len(), 16);
        for e in &lib.entries {
            assert_eq!(e.judgment.left, e.judgment.right, "{}", e.name);
        }
        let add = lib.get("add").unwrap();
        assert_eq!(add.ty, RelType::arrow(nat_ty(), RelType::arrow(nat_ty(), nat_ty())));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = stdlib(Exec::Sequential).unwrap();
        let b = stdlib(Exec::Parallel).unwrap();
        assert_eq!(render_prelude(&a), render_prelude(&b));
    }

    #[test]
    fn two_plus_two() {
        let lib = stdlib(Exec::Sequential).unwrap();
        let t = |n: &str| lib.get(n).unwrap().term.clone();
        let num = |k: usize| (0..k).fold(t("zero"), |acc, _| Term::app(t("succ"), acc));
        let sum = Term::apps(t("add"), [num(2), num(2)]);
        assert_eq!(conv_check(&sum, &num(4), 10_000), ConvResult::Equal);
        assert_eq!(conv_check(&sum, &num(3), 10_000), ConvResult::Distinct);
    }
}
