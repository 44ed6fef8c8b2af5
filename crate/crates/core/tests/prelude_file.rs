use reltt_core::frontend::{check_prelude, Config, PRELUDE};
use reltt_core::par::Exec;
use reltt_core::prelude::{render_prelude, stdlib};

/// Regenerate with `UPDATE_PRELUDE=1 cargo test -p reltt-core --test prelude_file`.
#[test]
fn shipped_prelude_matches_generator() {
    let lib = stdlib(Exec::Parallel).unwrap();
    let text = render_prelude(&lib);
    if std::env::var_os("UPDATE_PRELUDE").is_some() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/prelude/stdlib.rtt");
        std::fs::write(path, &text).unwrap();
        return;
    }
    assert_eq!(PRELUDE, text, "prelude/stdlib.rtt is stale");
}

#[test]
fn shipped_prelude_checks() {
    let r = check_prelude(&Config::default());
    assert!(r.report.diagnostics.is_empty(), "{:#?}", r.report.diagnostics);
    assert_eq!(r.report.exit_code(), 0);
    let lib = stdlib(Exec::Sequential).unwrap();
    assert_eq!(r.report.proofs.len(), lib.entries.len());
    for (checked, entry) in r.report.proofs.iter().zip(&lib.entries) {
        assert_eq!(checked.name.as_ref() as &str, entry.name);
        assert_eq!(checked.judgment, entry.judgment, "{}", entry.name);
        assert_eq!(r.defs.terms[entry.name], entry.term, "{}", entry.name);
    }
}
