//! Embedding-check benchmarks: brute force vs the structured collapse,
//! and sequential vs parallel partitioning of the H-edge scan.
//!
//! Run with `cargo bench -p hedet-core`. Without the `parallel` feature
//! the worker variants all fall back to the sequential path.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use hedet_core::counterexample::{build_h, HGraph, Instance, Params};
use hedet_core::graph::{cycle, mycielski};
use hedet_core::verifier::{check_embedding, CheckMode, EmbeddingOutcome};
use std::hint::black_box;

fn instance(seed_chain: Option<usize>, q: usize) -> (Instance, HGraph) {
    let seed = match seed_chain {
        None => cycle(7).unwrap(),
        Some(r) => mycielski(&cycle(7).unwrap(), r).unwrap(),
    };
    let params = Params::validate(seed, q, None).unwrap();
    let h = build_h(&params);
    (Instance::new(params), h)
}

fn assert_pass(outcome: EmbeddingOutcome) {
    assert!(matches!(outcome, EmbeddingOutcome::Pass { .. }));
}

fn bench_desk_instance(c: &mut Criterion) {
    let (inst, h) = instance(None, 3);
    let mut group = c.benchmark_group("embedding_c7_q3");
    group.bench_function("bruteforce_seq", |b| {
        b.iter_batched(
            || (),
            |()| assert_pass(check_embedding(&inst, &h, CheckMode::Bruteforce, Some(1))),
            BatchSize::SmallInput,
        )
    });
    group.bench_function("structured_seq", |b| {
        b.iter(|| assert_pass(check_embedding(&inst, &h, CheckMode::Structured, Some(1))))
    });
    group.bench_function("structured_par", |b| {
        b.iter(|| assert_pass(check_embedding(&inst, &h, CheckMode::Structured, None)))
    });
    group.finish();
}

fn bench_mid_instance(c: &mut Criterion) {
    // M_3(C_7) seed: 22 vertices, odd girth 7, H on 806 vertices. Brute
    // force is two orders of magnitude off the structured path here, so
    // keep its sample count small.
    let (inst, h) = instance(Some(3), 11);
    let mut group = c.benchmark_group("embedding_m3c7_q11");
    group.sample_size(10);
    group.bench_function("bruteforce_seq", |b| {
        b.iter(|| assert_pass(check_embedding(&inst, &h, CheckMode::Bruteforce, Some(1))))
    });
    group.bench_function("structured_seq", |b| {
        b.iter(|| assert_pass(check_embedding(&inst, &h, CheckMode::Structured, Some(1))))
    });
    group.bench_function("structured_par", |b| {
        b.iter(|| assert_pass(check_embedding(&inst, &h, CheckMode::Structured, None)))
    });
    group.finish();
    black_box(&inst);
}

fn bench_full_geometry(c: &mut Criterion) {
    // C_83 seed: the exact target geometry (10,501 H-vertices, ~10^6
    // H-edges). Structured mode only; brute force is ~10^12 comparisons.
    let (inst, h) = instance_c83();
    let mut group = c.benchmark_group("embedding_c83_q41");
    group.sample_size(10);
    group.bench_function("structured_seq", |b| {
        b.iter(|| assert_pass(check_embedding(&inst, &h, CheckMode::Structured, Some(1))))
    });
    group.bench_function("structured_par", |b| {
        b.iter(|| assert_pass(check_embedding(&inst, &h, CheckMode::Structured, None)))
    });
    group.finish();
}

fn instance_c83() -> (Instance, HGraph) {
    let params = Params::validate(cycle(83).unwrap(), 41, None).unwrap();
    let h = build_h(&params);
    (Instance::new(params), h)
}

criterion_group!(
    benches,
    bench_desk_instance,
    bench_mid_instance,
    bench_full_geometry
);
criterion_main!(benches);
