//! Pipeline stages on a single-thread pool versus the default rayon pool.
//!
//! Build with `--no-default-features` to time the plain sequential fallback; the
//! pool sizes then make no difference.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lnd_core::{
    certify_coordinate, fiber_dependence_check, invariant_space, parse_poly, rat, Derivation,
    MonomialOrder, Poly, RingSpec,
};

fn ring(vars: &[&str]) -> Arc<RingSpec> {
    RingSpec::free(vars, MonomialOrder::GradedLex).unwrap()
}

fn der(r: &Arc<RingSpec>, pairs: &[(&str, &str)]) -> Derivation {
    let pairs: Vec<(&str, Poly)> = pairs
        .iter()
        .map(|(v, s)| (*v, parse_poly(s, r).unwrap()))
        .collect();
    Derivation::from_named(r, &pairs).unwrap()
}

fn triple() -> Vec<Derivation> {
    let r = ring(&["X", "Y", "Z"]);
    vec![
        der(&r, &[("Y", "1")]),
        der(&r, &[("X", "1"), ("Y", "Z")]),
        der(&r, &[("Z", "1")]),
    ]
}

fn shear() -> Vec<Derivation> {
    let r = ring(&["X", "Y", "Z"]);
    vec![der(&r, &[("X", "Z")]), der(&r, &[("Y", "1")])]
}

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("sequential", one), ("parallel", all)]
}

fn bench_invariants(c: &mut Criterion) {
    let ds = triple();
    let r = ds[0].ring().clone();
    let mut group = c.benchmark_group("invariant_space");
    group.sample_size(10);
    for (label, pool) in pools() {
        for bound in [6, 10] {
            group.bench_with_input(BenchmarkId::new(label, bound), &bound, |b, &bound| {
                b.iter(|| pool.install(|| invariant_space(&r, black_box(&ds[..1]), bound).unwrap()))
            });
        }
    }
    group.finish();
}

fn bench_certify(c: &mut Criterion) {
    let ds = triple();
    let stacked = &ds[..2];
    let mut group = c.benchmark_group("certify_coordinate");
    group.sample_size(10);
    for (label, pool) in pools() {
        group.bench_function(label, |b| {
            b.iter(|| pool.install(|| certify_coordinate(black_box(stacked), 6).unwrap()))
        });
    }
    group.finish();
}

fn bench_fiber_scan(c: &mut Criterion) {
    let ds = shear();
    let r = ds[0].ring().clone();
    let f = parse_poly("Z", &r).unwrap();
    let mut group = c.benchmark_group("fiber_scan");
    group.sample_size(10);
    for (label, pool) in pools() {
        group.bench_function(label, |b| {
            b.iter(|| {
                pool.install(|| {
                    (-3..=3)
                        .map(|a| fiber_dependence_check(&ds, &f, &rat(a), 4).unwrap())
                        .filter(|&dep| dep)
                        .count()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_invariants, bench_certify, bench_fiber_scan);
criterion_main!(benches);
