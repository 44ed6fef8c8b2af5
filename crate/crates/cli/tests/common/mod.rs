#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use reltt_core::frontend::{check_prelude, prelude_defs, process, CheckedProof, Config};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus")
}

pub fn rtt_files(dir: &std::path::Path) -> Vec<PathBuf> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "rtt"))
        .collect();
    files.sort();
    files
}

/// Every checked proof of the prelude and the accepted corpus, in order.
pub fn corpus_proofs() -> Vec<CheckedProof> {
    let config = Config::default();
    let prelude = check_prelude(&config);
    assert!(prelude.report.diagnostics.is_empty(), "{:?}", prelude.report.diagnostics);
    let defs = prelude_defs().unwrap();
    let mut out = prelude.report.proofs;
    for f in rtt_files(&corpus_dir()) {
        let src = std::fs::read_to_string(&f).unwrap();
        let r = process(&src, &defs, &config, false).report;
        assert!(r.diagnostics.is_empty(), "{}: {:?}", f.display(), r.diagnostics);
        out.extend(r.proofs);
    }
    out
}

pub fn reltt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reltt"))
        .args(args)
        .output()
        .expect("failed to run reltt")
}
