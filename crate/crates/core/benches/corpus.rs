use std::hint::black_box;
use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use reltt_core::frontend::{check_prelude, prelude_defs, process, CheckedProof, Config};
use reltt_core::par::{self, Exec};
use reltt_core::prelude::stdlib;
use reltt_core::systemf::self_witness;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn corpus_sources() -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "rtt"))
        .collect();
    files.sort();
    files.iter().map(|f| std::fs::read_to_string(f).unwrap()).collect()
}

fn bench_stdlib(c: &mut Criterion) {
    let mut group = c.benchmark_group("stdlib");
    for (label, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(label), |b| b.iter(|| stdlib(black_box(exec)).unwrap()));
    }
    group.finish();
}

fn bench_check_files(c: &mut Criterion) {
    let sources = corpus_sources();
    let defs = prelude_defs().unwrap();
    let config = Config::default();
    let mut group = c.benchmark_group("check-corpus");
    for (label, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| par::map(exec, &sources, |src| process(src, &defs, &config, false).report.proofs.len()))
        });
    }
    group.finish();
}

fn bench_witnesses(c: &mut Criterion) {
    let config = Config::default();
    let defs = prelude_defs().unwrap();
    let mut proofs: Vec<CheckedProof> = check_prelude(&config).report.proofs;
    for src in corpus_sources() {
        proofs.extend(process(&src, &defs, &config, false).report.proofs);
    }
    let mut group = c.benchmark_group("self-witness");
    for (label, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| par::map(exec, &proofs, |p| self_witness(&p.context, &p.proof, p.fuel).is_ok()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_stdlib, bench_check_files, bench_witnesses);
criterion_main!(benches);
