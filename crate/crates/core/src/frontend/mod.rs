//! The surface language: lexer, parser, script runner and dumps.

pub mod diag;
pub mod dump;
pub mod lexer;
pub mod parser;
pub mod script;

pub use diag::{Diagnostic, ParseError, Severity, Span, Stage};
pub use dump::{dump, DumpError};
pub use parser::{parse, parse_proof, parse_term, parse_term_with, parse_type, parse_type_with, Defs, DumpKind, Parsed, Script, SpanTree, Statement, Stmt};
pub use script::{render_analysis, check_prelude, prelude_defs, process, run_script, CheckedProof, Config, FileReport, Report, PRELUDE};
