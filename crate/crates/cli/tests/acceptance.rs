//! Acceptance criteria, one PASS/FAIL line each.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use reltt_core::analysis::{polarity_holds, Polarity};
use reltt_core::frontend::lexer::{lex, Tok};
use reltt_core::kernel::{check, render_proof, to_relpf, ErrorKind, Rule};
use reltt_core::par::Exec;
use reltt_core::prelude::{collapse, gen_fmap, gen_fmap_deriv, gen_in_deriv, nat_functor, nat_ty, stdlib};
use reltt_core::reduction::{conv_check, normalize, ConvResult};
use reltt_core::syntax::combinators::{ff, id, konst, omega, tt};
use reltt_core::syntax::{name, render_context, Context, Judgment, Name, NameSupply, RelType, Term};
use reltt_core::systemf::{
    erase_proof, project_ctx, project_derivation, project_type, self_witness, validate_f, FType,
};

fn criterion_1() {
    let start = Instant::now();
    let r = RelType::var("R");
    let b = collapse(&r);
    let j = check(&b.context, &b.proof, 1000).unwrap();
    assert_eq!(j, Judgment::new(Term::var("x"), r.clone(), Term::var("y'")));
    let tree = to_relpf(&b.context, &b.proof, 1000).unwrap();
    let spine = tree.spine();
    assert_eq!(
        spine,
        vec![Rule::Conversion, Rule::ArrowElim, Rule::ArrowElim, Rule::ForallElim, Rule::Assumption]
    );
    assert_eq!(tree.conclusion, j);
    assert!(start.elapsed() < Duration::from_secs(1));
}

fn criterion_2() {
    let v = Term::var;
    let tt_xy = Term::apps(tt(), [v("x"), v("y")]);
    let ff_xy = Term::apps(ff(), [v("x'"), v("y'")]);
    assert_eq!(conv_check(&tt_xy, &v("x"), 5), ConvResult::Equal);
    assert_eq!(conv_check(&ff_xy, &v("y'"), 5), ConvResult::Equal);
    assert_eq!(conv_check(&tt(), &ff(), 100), ConvResult::Distinct);
    assert_eq!(conv_check(&omega(), &id(), 1000), ConvResult::Undecided);
}

/// Random types of about `size` nodes over the variables X, Y, Z;
/// promotions count one extra for their term.
fn random_type(rng: &mut StdRng, size: usize, depth: usize) -> RelType {
    if size <= 1 {
        return match rng.gen_range(0..5) {
            0 if depth > 0 => RelType::Bound(rng.gen_range(0..depth)),
            1 => RelType::promote(Term::var(["t", "u"][rng.gen_range(0..2)])),
            _ => RelType::var(["X", "Y", "Z"][rng.gen_range(0..3)]),
        };
    }
    let choice = if size == 2 { rng.gen_range(0..2) } else { rng.gen_range(0..4) };
    match choice {
        0 => RelType::conv(random_type(rng, size - 1, depth)),
        1 => RelType::All(name("W"), Box::new(random_type(rng, size - 1, depth + 1))),
        k => {
            let left = rng.gen_range(1..size - 1);
            let (a, b) = (random_type(rng, left, depth), random_type(rng, size - 1 - left, depth));
            if k == 2 {
                RelType::arrow(a, b)
            } else {
                RelType::comp(a, b)
            }
        }
    }
}

fn criterion_3() {
    let x = RelType::var("X");
    assert!(polarity_holds("X", Polarity::Plus, &x));
    assert!(!polarity_holds("X", Polarity::Plus, &RelType::arrow(x.clone(), x.clone())));
    assert!(polarity_holds("X", Polarity::Plus, &nat_functor()));
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut absent = 0;
    for _ in 0..10_000 {
        let r = loop {
            let size = rng.gen_range(1..=12);
            let r = random_type(&mut rng, size, 0);
            if r.size() <= 12 {
                break r;
            }
        };
        let both = polarity_holds("X", Polarity::Plus, &r) && polarity_holds("X", Polarity::Minus, &r);
        let free = r.free_tvars().contains("X");
        assert_eq!(both, !free, "{r}");
        absent += usize::from(!free);
    }
    // both sides of the equivalence are exercised
    assert!(absent > 1000 && absent < 9000);
}

fn criterion_4() {
    let x = name("X");
    let xv = RelType::var("X");
    let y = RelType::var("Y");
    assert_eq!(gen_fmap(&x, &xv).unwrap(), id());
    assert_eq!(gen_fmap(&x, &y).unwrap(), Term::app(konst(), id()));
    let cases = [
        (xv.clone(), Polarity::Plus),
        (y.clone(), Polarity::Plus),
        (RelType::arrow(y.clone(), xv.clone()), Polarity::Plus),
        (nat_functor(), Polarity::Plus),
        (RelType::all("Y", RelType::arrow(xv.clone(), RelType::var("Y"))), Polarity::Minus),
    ];
    for (r, p) in cases {
        let d = gen_fmap_deriv(&x, &r, p).unwrap();
        let fr = FType::from_rel(&r).unwrap();
        let (tp, tn) = (FType::Free(d.pos.clone()), FType::Free(d.neg.clone()));
        let (xp, xq) = if p == Polarity::Plus { (&tp, &tn) } else { (&tn, &tp) };
        let want = FType::arrows([FType::arrow(tp.clone(), tn.clone()), fr.subst(&x, xp)], fr.subst(&x, xq));
        let (subject, ty) = validate_f(&vec![], &d.derivation).unwrap();
        assert_eq!(ty, want, "{r}");
        assert_eq!(subject, gen_fmap(&x, &r).unwrap(), "{r}");
    }
}

fn criterion_5() {
    let start = Instant::now();
    let x = name("X");
    let nat = FType::from_rel(&nat_ty()).unwrap();
    let d = gen_in_deriv(&x, &nat_functor()).unwrap();
    let (_, ty) = validate_f(&vec![], &d).unwrap();
    let body = FType::from_rel(&nat_functor()).unwrap().subst(&x, &nat);
    assert_eq!(ty, FType::arrow(body, nat.clone()));
    let lib = stdlib(Exec::Parallel).unwrap();
    let n = nat_ty();
    let want = [
        ("zero", n.clone()),
        ("succ", RelType::arrow(n.clone(), n.clone())),
        ("add", RelType::arrow(n.clone(), RelType::arrow(n.clone(), n.clone()))),
    ];
    for (e, ty) in want {
        let entry = lib.get(e).unwrap();
        let j = check(&entry.context, &entry.proof, 10_000).unwrap();
        assert_eq!(j, Judgment::new(entry.term.clone(), ty, entry.term.clone()), "{e}");
    }
    assert!(start.elapsed() < Duration::from_secs(10));
}

/// Numerals in normal form, reduced by hand from `in`, `inl`, `inr`:
/// n_0 = \a. a (\l. \r. l (\z. z)), n_(k+1) = \a. a (\l. \r. r N_k), where
/// N_k is the body of n_k with the same `a`.
fn hand_numeral(k: usize) -> Term {
    let a = || Term::var("a");
    let inj = |left: bool, arg: Term| {
        let pick = if left { "l" } else { "r" };
        let body = Term::app(Term::var(pick), arg);
        Term::app(a(), Term::lam("l", Term::lam("r", body)))
    };
    let mut body = inj(true, id());
    for _ in 0..k {
        body = inj(false, body);
    }
    Term::lam("a", body)
}

fn criterion_6() {
    let lib = stdlib(Exec::Parallel).unwrap();
    let term = |n: &str| lib.get(n).unwrap().term.clone();
    let numeral = |k: usize| (0..k).fold(term("zero"), |acc, _| Term::app(term("succ"), acc));
    for k in 0..=4 {
        let nf = normalize(&numeral(k), 10_000);
        assert!(nf.is_normal());
        assert_eq!(nf.term, hand_numeral(k), "n{k}");
    }
    let sum = Term::apps(term("add"), [numeral(2), numeral(2)]);
    assert_eq!(conv_check(&sum, &numeral(4), 10_000), ConvResult::Equal);
    assert_eq!(normalize(&sum, 10_000).term, hand_numeral(4));
    assert_eq!(conv_check(&sum, &numeral(3), 10_000), ConvResult::Distinct);
}

fn criterion_7() {
    let proofs = common::corpus_proofs();
    assert!(proofs.len() >= 25, "{} proofs", proofs.len());
    for p in &proofs {
        let d = project_derivation(&p.context, &p.proof, p.fuel).unwrap();
        let (subject, ty) = validate_f(&project_ctx(&p.context), &d).unwrap_or_else(|e| panic!("{}: {e}", p.name));
        assert_eq!(subject, erase_proof(&p.proof), "{}", p.name);
        assert_eq!(ty, project_type(&p.judgment.ty), "{}", p.name);
    }
}

fn criterion_8() {
    let proofs = common::corpus_proofs();
    for p in &proofs {
        let w = self_witness(&p.context, &p.proof, p.fuel).unwrap_or_else(|e| panic!("{}: {e}", p.name));
        let cold = check(&w.context, &w.proof, p.fuel).unwrap();
        assert_eq!(cold, w.judgment, "{}", p.name);
        assert_eq!(w.judgment.left, erase_proof(&p.proof), "{}", p.name);
    }
}

/// All identifiers appearing in a proof and its context.
fn names_in(ctx: &Context, text: &str) -> BTreeSet<Name> {
    let src = format!("{} {text}", render_context(ctx));
    lex(&src, true)
        .unwrap()
        .into_iter()
        .filter_map(|t| match t.tok {
            Tok::Ident(s) => Some(name(&s)),
            _ => None,
        })
        .collect()
}

fn criterion_9() {
    let proofs = common::corpus_proofs();
    for p in &proofs {
        let taken = names_in(&p.context, &render_proof(&p.proof));
        let mut supply = NameSupply::avoiding(taken.clone());
        let renamed = p.proof.rename_binders(&mut supply);
        let j = check(&p.context, &renamed, p.fuel).unwrap_or_else(|e| panic!("{}: {e}", p.name));
        assert_eq!(j, p.judgment, "{} renamed", p.name);
        let again = check(&p.context, &p.proof, p.fuel).unwrap();
        assert_eq!(again, p.judgment, "{} rechecked", p.name);

        let mut supply = NameSupply::avoiding(taken);
        let (u, z, z_, t) = (supply.fresh("w"), supply.fresh("z"), supply.fresh("z"), supply.fresh("T"));
        let extra = Judgment::new(Term::Free(z), RelType::Free(t), Term::Free(z_));
        for at in [0, p.context.len()] {
            let mut ctx = p.context.clone();
            ctx.insert_at(at, u.clone(), extra.clone()).unwrap();
            let j = check(&ctx, &p.proof, p.fuel).unwrap_or_else(|e| panic!("{}: {e}", p.name));
            assert_eq!(j, p.judgment, "{} weakened at {at}", p.name);
        }
    }
}

fn criterion_10() {
    let files = common::rtt_files(&common::corpus_dir().join("negative"));
    assert!(files.len() >= 12);
    let mut kinds = BTreeSet::new();
    for f in &files {
        let src = std::fs::read_to_string(f).unwrap();
        let expect = src
            .lines()
            .find_map(|l| l.strip_prefix("-- expect: "))
            .unwrap_or_else(|| panic!("{} has no expect header", f.display()))
            .trim();
        assert!(ErrorKind::parse(expect).is_some(), "{expect}");
        let out = common::reltt(&["check", f.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "{}", f.display());
        let stderr = String::from_utf8_lossy(&out.stderr);
        let errors: Vec<&str> = stderr.lines().filter(|l| l.contains(": error[")).collect();
        assert_eq!(errors.len(), 1, "{}: {stderr}", f.display());
        assert!(errors[0].contains(&format!("error[{expect}]")), "{}: {stderr}", f.display());
        kinds.insert(expect.to_string());
    }
    for k in ["freshness-violation", "pair-mid-mismatch", "rho-premise-mismatch", "conversion-undecided"] {
        assert!(kinds.contains(k), "{k}");
    }
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("bool collapse derivation", criterion_1),
        ("conversion oracle", criterion_2),
        ("polarity suite", criterion_3),
        ("fmap table", criterion_4),
        ("datatype pipeline", criterion_5),
        ("arithmetic sanity", criterion_6),
        ("projection round-trip", criterion_7),
        ("self-witness", criterion_8),
        ("determinism and weakening", criterion_9),
        ("negative suite", criterion_10),
    ];
    panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (i, (label, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = panic::catch_unwind(AssertUnwindSafe(f)).is_ok();
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {verdict}  {label} ({:.2?})", i + 1, start.elapsed());
        failed += usize::from(!ok);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
