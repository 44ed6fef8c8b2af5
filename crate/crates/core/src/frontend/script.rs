//! Running parsed scripts: proof checking, commands and dumps.

use super::diag::{Diagnostic, Severity, Span, Stage};
use super::dump::dump;
use super::parser::{parse, Defs, Script, SpanTree, Stmt};
use crate::analysis::analyze_type;
use crate::kernel::{check_declared, derive, KernelError, Proof};
use crate::reduction::{normalize, DEFAULT_FUEL};
use crate::syntax::{render_context, render_term, render_type, Context, Judgment, Name};

/// The prelude as shipped, checked into the repository.
pub const PRELUDE: &str = include_str!("../../prelude/stdlib.rtt");

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub fuel: usize,
    /// Print the relational derivation of every checked proof.
    pub trace: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            fuel: DEFAULT_FUEL,
            trace: false,
        }
    }
}

/// A proof that passed the kernel.
#[derive(Debug, Clone)]
pub struct CheckedProof {
    pub name: Name,
    pub context: Context,
    pub proof: Proof,
    pub judgment: Judgment,
    pub span: Span,
    /// Fuel in force where the proof was checked.
    pub fuel: usize,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub diagnostics: Vec<Diagnostic>,
    pub proofs: Vec<CheckedProof>,
    /// Human-readable results of commands, in statement order.
    pub output: Vec<String>,
    /// Records produced by `dump` statements.
    pub records: Vec<String>,
}

impl Report {
    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(Diagnostic::is_error)
    }

    /// 0 on success, 2 if anything failed to parse, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        let errors = self.diagnostics.iter().filter(|d| d.is_error());
        let mut code = 0;
        for d in errors {
            match d.stage {
                Stage::Parse => return 2,
                Stage::Check => code = 1,
            }
        }
        code
    }
}

fn kernel_diag(e: &KernelError, spans: &SpanTree, ctx: &Context) -> Diagnostic {
    Diagnostic::error(Stage::Check, e.kind.as_str(), spans.lookup(&e.location.0), e.message.clone())
        .with_context(render_context(ctx))
}

/// Processes statements in order. A failing statement is reported and the
/// rest of the script still runs.
pub fn run_script(script: &Script, config: &Config) -> Report {
    let mut report = Report::default();
    let mut fuel = config.fuel;
    let mut failed: Vec<Name> = Vec::new();
    for st in &script.statements {
        match &st.stmt {
            Stmt::Fuel(n) => fuel = *n,
            Stmt::TermDef(..) | Stmt::TypeDef(..) => {}
            Stmt::ProofDef {
                name,
                context,
                declared,
                proof,
                spans,
            } => {
                let mut ctx = Context::new();
                let mut ok = true;
                for (u, j) in context {
                    if ctx.push(u.clone(), j.clone()).is_err() {
                        report.diagnostics.push(Diagnostic::error(
                            Stage::Check,
                            "duplicate-assumption",
                            st.span,
                            format!("proof variable `{u}` is assumed twice"),
                        ));
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    failed.push(name.clone());
                    continue;
                }
                match check_declared(&ctx, proof, declared, fuel) {
                    Ok(judgment) => {
                        report.output.push(format!("{name} : {judgment}"));
                        if config.trace {
                            trace(&mut report, &ctx, proof, fuel);
                        }
                        report.proofs.push(CheckedProof {
                            name: name.clone(),
                            context: ctx,
                            proof: proof.clone(),
                            judgment,
                            span: st.span,
                            fuel,
                        });
                    }
                    Err(e) => {
                        report.diagnostics.push(kernel_diag(&e, spans, &ctx));
                        failed.push(name.clone());
                    }
                }
            }
            Stmt::Check(proof, spans) => {
                let ctx = Context::new();
                match derive(&ctx, proof, fuel) {
                    Ok(d) => {
                        report.output.push(format!("{}", d.judgment));
                        if config.trace {
                            trace(&mut report, &ctx, proof, fuel);
                        }
                    }
                    Err(e) => report.diagnostics.push(kernel_diag(&e, spans, &ctx)),
                }
            }
            Stmt::Normalize(t) => {
                let r = normalize(t, fuel);
                if r.is_normal() {
                    report.output.push(render_term(&r.term));
                } else {
                    report.diagnostics.push(Diagnostic::error(
                        Stage::Check,
                        "fuel-exhausted",
                        st.span,
                        format!("no normal form within {fuel} steps; reached {}", render_term(&r.term)),
                    ));
                }
            }
            Stmt::Analyze(r) => match analyze_type(r, fuel) {
                Ok(rep) => report.output.push(format!("{}: {}", render_type(r), render_analysis(&rep))),
                Err(e) => report.diagnostics.push(Diagnostic::error(
                    Stage::Check,
                    "conversion-undecided",
                    st.span,
                    e.to_string(),
                )),
            },
            Stmt::Dump(kind, n) => match report.proofs.iter().find(|p| &p.name == n) {
                Some(p) => match dump(*kind, p, p.fuel) {
                    Ok(line) => {
                        report.output.push(line.clone());
                        report.records.push(line);
                    }
                    Err(e) => report.diagnostics.push(Diagnostic::error(Stage::Check, e.code(), st.span, e.to_string())),
                },
                None if failed.contains(n) => report.diagnostics.push(Diagnostic {
                    severity: Severity::Note,
                    ..Diagnostic::error(Stage::Check, "skipped", st.span, format!("`{n}` did not check; nothing to dump"))
                }),
                None => report.diagnostics.push(Diagnostic::error(
                    Stage::Check,
                    "unknown-proof",
                    st.span,
                    format!("no checked proof named `{n}`"),
                )),
            },
        }
    }
    report
}

fn trace(report: &mut Report, ctx: &Context, proof: &Proof, fuel: usize) {
    if let Ok(tree) = crate::kernel::to_relpf(ctx, proof, fuel) {
        report.output.extend(tree.render().lines().map(|l| format!("  {l}")));
    }
}

/// One-line summary of a type analysis.
pub fn render_analysis(r: &crate::analysis::TypeReport) -> String {
    let class = match r.forall_class {
        crate::analysis::ForallClass::PosOnly => "forall+",
        crate::analysis::ForallClass::NegOnly => "forall-",
        crate::analysis::ForallClass::Both => "forall+ forall-",
        crate::analysis::ForallClass::Neither => "mixed",
    };
    let mut out = format!("{class}; symmetric={}; simple-transitive={}", r.symmetric, r.simple_transitive);
    for (x, ps) in &r.polarities {
        let ps: String = ps.iter().map(|p| p.to_string()).collect();
        let ps = if ps.is_empty() { "none".to_string() } else { ps };
        out.push_str(&format!("; {x}:{ps}"));
    }
    out
}

/// Outcome of parsing and running one source file.
#[derive(Debug, Clone, Default)]
pub struct FileReport {
    pub report: Report,
    pub defs: Defs,
}

/// Parses and runs `src` on top of `defs`.
pub fn process(src: &str, defs: &Defs, config: &Config, allow_dotted: bool) -> FileReport {
    let parsed = parse(src, defs, allow_dotted);
    let mut report = run_script(&parsed.script, config);
    let mut diagnostics = parsed.diagnostics;
    diagnostics.append(&mut report.diagnostics);
    diagnostics.sort_by_key(|d| d.span.start);
    report.diagnostics = diagnostics;
    FileReport {
        report,
        defs: parsed.defs,
    }
}

/// Definitions from the shipped prelude, without re-checking its proofs.
pub fn prelude_defs() -> Result<Defs, Vec<Diagnostic>> {
    let parsed = parse(PRELUDE, &Defs::default(), true);
    if parsed.diagnostics.is_empty() {
        Ok(parsed.defs)
    } else {
        Err(parsed.diagnostics)
    }
}

/// Parses and checks the prelude itself.
pub fn check_prelude(config: &Config) -> FileReport {
    process(PRELUDE, &Defs::default(), config, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(src: &str) -> Report {
        process(src, &Defs::default(), &Config::default(), false).report
    }

    #[test]
    fn identity_proof() {
        let r = run("def I := \\x. x\nproof id : I [all X. X -> X] I := Fun X => fun (u : x [X] x') => u");
        assert!(r.diagnostics.is_empty(), "{:?}", r.diagnostics);
        assert_eq!(r.proofs.len(), 1);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn failures_do_not_halt_later_statements() {
        let r = run("check u\nnormalize (\\x. x) y\n");
        assert_eq!(r.diagnostics.len(), 1);
        assert_eq!(r.diagnostics[0].code, "unbound-proof-variable");
        assert_eq!(r.output, vec!["y".to_string()]);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn parse_errors_exit_two() {
        let r = run("def x := )\nnormalize y");
        assert_eq!(r.exit_code(), 2);
        assert_eq!(r.output, vec!["y".to_string()]);
    }

    #[test]
    fn fuel_pragma_applies_to_later_statements() {
        let r = run("#fuel 3\nnormalize (\\x. x x) (\\x. x x)");
        assert_eq!(r.diagnostics[0].code, "fuel-exhausted");
    }

    #[test]
    fn identity_dump() {
        let r = run(
            "proof id : \\x. x [all X. X -> X] \\x'. x' := Fun X => fun (u : x [X] x') => u\ndump judgment id",
        );
        assert_eq!(
            r.records,
            vec![r#"{"kind":"judgment","name":"id","context":[],"left":"\\x. x","type":"all X. X -> X","right":"\\x'. x'"}"#]
        );
    }
}
