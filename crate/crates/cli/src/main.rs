use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use reltt_core::analysis::analyze_type;
use reltt_core::frontend::script::render_analysis;
use reltt_core::frontend::{
    dump, parse, parse_term_with, prelude_defs, process, CheckedProof, Config, Defs, Diagnostic, DumpKind, Stmt,
};
use reltt_core::par::{self, Exec};
use reltt_core::reduction::{normalize, DEFAULT_FUEL};
use reltt_core::syntax::{render_term, render_type};

#[derive(Parser)]
#[command(name = "reltt", version, about = "Checker for relational type theory proof scripts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check proof scripts.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Reduction steps allowed per conversion check.
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        /// Do not load the standard prelude.
        #[arg(long)]
        no_prelude: bool,
        #[arg(long, value_name = "PATH")]
        dump_judgments: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        dump_erasure: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        dump_systemf: Option<PathBuf>,
        /// Print the relational derivation of each checked proof.
        #[arg(long)]
        trace: bool,
    },
    /// Report polarity, quantifier class and symmetry for the types in a script.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        #[arg(long)]
        no_prelude: bool,
    },
    /// Print the beta-eta normal form of a term.
    Normalize {
        term: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        #[arg(long)]
        no_prelude: bool,
    },
}

const CHECK_FAILED: u8 = 1;
const USAGE_FAILED: u8 = 2;

fn load_defs(no_prelude: bool) -> Result<Defs, u8> {
    if no_prelude {
        return Ok(Defs::default());
    }
    prelude_defs().map_err(|diags| {
        for d in diags {
            eprintln!("{}", d.render("<prelude>", reltt_core::frontend::PRELUDE));
        }
        USAGE_FAILED
    })
}

fn read(path: &Path) -> Result<String, u8> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: error[io]: {e}", path.display());
        USAGE_FAILED
    })
}

struct FileRun {
    path: PathBuf,
    src: String,
    proofs: Vec<CheckedProof>,
    output: Vec<String>,
    diagnostics: Vec<Diagnostic>,
    code: i32,
}

fn write_dump(path: &Path, kind: DumpKind, runs: &[FileRun], failures: &mut Vec<String>) -> Result<(), u8> {
    let mut out = String::new();
    for run in runs {
        for p in &run.proofs {
            match dump(kind, p, p.fuel) {
                Ok(line) => {
                    out.push_str(&line);
                    out.push('\n');
                }
                Err(e) => failures.push(format!("{}: error[{}]: {}: {e}", run.path.display(), e.code(), p.name)),
            }
        }
    }
    fs::write(path, out).map_err(|e| {
        eprintln!("{}: error[io]: {e}", path.display());
        USAGE_FAILED
    })
}

#[allow(clippy::too_many_arguments)]
fn check(
    files: &[PathBuf],
    fuel: usize,
    no_prelude: bool,
    dumps: [(Option<&PathBuf>, DumpKind); 3],
    trace: bool,
) -> Result<u8, u8> {
    let defs = load_defs(no_prelude)?;
    let sources = files
        .iter()
        .map(|f| read(f).map(|s| (f.clone(), s)))
        .collect::<Result<Vec<_>, _>>()?;
    let config = Config { fuel, trace };
    let runs: Vec<FileRun> = par::map(Exec::default(), &sources, |(path, src)| {
        let r = process(src, &defs, &config, false).report;
        FileRun {
            path: path.clone(),
            src: src.clone(),
            code: r.exit_code(),
            proofs: r.proofs,
            output: r.output,
            diagnostics: r.diagnostics,
        }
    });
    let mut worst = 0;
    for run in &runs {
        for line in &run.output {
            println!("{line}");
        }
        for d in &run.diagnostics {
            eprintln!("{}", d.render(&run.path.display().to_string(), &run.src));
        }
        worst = worst.max(run.code);
    }
    let mut failures = Vec::new();
    for (path, kind) in dumps {
        if let Some(path) = path {
            write_dump(path, kind, &runs, &mut failures)?;
        }
    }
    for f in &failures {
        eprintln!("{f}");
    }
    if worst == 0 && !failures.is_empty() {
        worst = 1;
    }
    Ok(worst as u8)
}

fn analyze(file: &Path, fuel: usize, no_prelude: bool) -> Result<u8, u8> {
    let defs = load_defs(no_prelude)?;
    let src = read(file)?;
    let parsed = parse(&src, &defs, false);
    let name = file.display().to_string();
    for d in &parsed.diagnostics {
        eprintln!("{}", d.render(&name, &src));
    }
    if !parsed.diagnostics.is_empty() {
        return Err(USAGE_FAILED);
    }
    let mut code = 0;
    for st in &parsed.script.statements {
        let (label, ty) = match &st.stmt {
            Stmt::TypeDef(n, r) => (n.to_string(), r),
            Stmt::Analyze(r) => (render_type(r), r),
            _ => continue,
        };
        match analyze_type(ty, fuel) {
            Ok(rep) => println!("{label}: {}", render_analysis(&rep)),
            Err(e) => {
                eprintln!("{name}: error[conversion-undecided]: {label}: {e}");
                code = CHECK_FAILED;
            }
        }
    }
    Ok(code)
}

fn normalize_cmd(src: &str, fuel: usize, no_prelude: bool) -> Result<u8, u8> {
    let defs = load_defs(no_prelude)?;
    let t = parse_term_with(src, &defs).map_err(|e| {
        eprintln!("{}", Diagnostic::from(e).render("<term>", src));
        USAGE_FAILED
    })?;
    let r = normalize(&t, fuel);
    println!("{}", render_term(&r.term));
    if r.is_normal() {
        Ok(0)
    } else {
        eprintln!("<term>: error[fuel-exhausted]: no normal form within {fuel} steps");
        Ok(CHECK_FAILED)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check {
            files,
            fuel,
            no_prelude,
            dump_judgments,
            dump_erasure,
            dump_systemf,
            trace,
        } => check(
            files,
            *fuel,
            *no_prelude,
            [
                (dump_judgments.as_ref(), DumpKind::Judgment),
                (dump_erasure.as_ref(), DumpKind::Erasure),
                (dump_systemf.as_ref(), DumpKind::Systemf),
            ],
            *trace,
        ),
        Command::Analyze { file, fuel, no_prelude } => analyze(file, *fuel, *no_prelude),
        Command::Normalize { term, fuel, no_prelude } => normalize_cmd(term, *fuel, *no_prelude),
    };
    ExitCode::from(result.unwrap_or_else(|code| code))
}
