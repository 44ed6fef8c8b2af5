mod common;

use std::fs;

use common::{corpus_dir, reltt};

fn corpus(name: &str) -> String {
    corpus_dir().join(name).to_str().unwrap().to_string()
}

fn stdout(out: &std::process::Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &std::process::Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn collapse_checks_and_echoes_its_judgment() {
    let out = reltt(&["check", &corpus("collapse.rtt")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("collapse : x [R] y'\n"), "{text}");
    assert!(text.contains(r#"{"kind":"erasure","name":"collapse","term":"u v w"}"#));
}

#[test]
fn whole_corpus_in_one_invocation() {
    let files: Vec<String> = common::rtt_files(&corpus_dir())
        .iter()
        .map(|p| p.to_str().unwrap().to_string())
        .collect();
    let mut args = vec!["check"];
    args.extend(files.iter().map(String::as_str));
    let out = reltt(&args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stderr(&out).is_empty());
}

#[test]
fn without_prelude_library_names_are_free() {
    let out = reltt(&["check", "--no-prelude", &corpus("collapse.rtt")]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    // Bool is now a type variable, so u cannot be instantiated
    assert!(err.contains("error[not-a-universal]"), "{err}");
    assert_eq!(err.matches(": error[").count(), 1, "{err}");
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.rtt");
    fs::write(&path, "proof p : a [R] b :=\n  (u, v\n").unwrap();
    let out = reltt(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.rtt:3:1: error[syntax]"), "{}", stderr(&out));
}

#[test]
fn dotted_names_are_reserved() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dotted.rtt");
    fs::write(&path, "def x\u{307} := \\y. y\n").unwrap();
    let out = reltt(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error[reserved-name]"));
}

#[test]
fn missing_file_is_a_config_failure() {
    let out = reltt(&["check", "/nonexistent/file.rtt"]);
    assert_eq!(out.status.code(), Some(2));
    let out = reltt(&["check", "--fuel", "many", &corpus("collapse.rtt")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn later_statements_run_after_a_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mixed.rtt");
    fs::write(&path, "proof bad (u : a [R] b) : a [R] b := v\nproof good (u : a [R] b) : a [R] b := u\n").unwrap();
    let out = reltt(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "good : a [R] b\n");
}

#[test]
fn dumps_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| {
        let j = dir.path().join(format!("j{tag}.jsonl"));
        let e = dir.path().join(format!("e{tag}.jsonl"));
        let f = dir.path().join(format!("f{tag}.jsonl"));
        let out = reltt(&[
            "check",
            &corpus("identity.rtt"),
            &corpus("promotion.rtt"),
            &corpus("collapse.rtt"),
            "--dump-judgments",
            j.to_str().unwrap(),
            "--dump-erasure",
            e.to_str().unwrap(),
            "--dump-systemf",
            f.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        [j, e, f].map(|p| fs::read_to_string(p).unwrap())
    };
    let first = run("1");
    let second = run("2");
    assert_eq!(first, second);
    let [judgments, erasures, systemf] = first;
    assert_eq!(
        judgments.lines().next().unwrap(),
        r#"{"kind":"judgment","name":"id","context":[],"left":"\\x. x","type":"all X. X -> X","right":"\\x'. x'"}"#
    );
    assert!(erasures.contains(r#"{"kind":"erasure","name":"collapse","term":"u v w"}"#));
    let graph = systemf.lines().find(|l| l.contains(r#""name":"graph""#)).unwrap();
    assert!(graph.contains(r#""type":"all X. X -> X""#), "{graph}");
}

#[test]
fn trace_prints_the_derivation() {
    let out = reltt(&["check", "--trace", &corpus("converse.rtt")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[converse-intro]"));
}

#[test]
fn analyze_reports_types() {
    let out = reltt(&["analyze", &corpus("polarity.rtt")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("Endo: forall+ forall-; symmetric=true; simple-transitive=true; X:none"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("X: ") && l.ends_with("X:+")), "{text}");
}

#[test]
fn normalize_command() {
    let out = reltt(&["normalize", "K I a b"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "b\n");
    let out = reltt(&["normalize", "(\\x. x x) (\\x. x x)", "--fuel", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("fuel-exhausted"));
    let out = reltt(&["normalize", "\\x."]);
    assert_eq!(out.status.code(), Some(2));
}
