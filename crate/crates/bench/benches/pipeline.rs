//! End-to-end timings for the hot paths: subgroup-order computation,
//! template construction, the recursive oracle, and full-cycle
//! verification.

use criterion::{criterion_group, criterion_main, Criterion};

use cayham_core::{
    construct, minimal_pairs, oracle_cycle, verify_hamiltonian_cycle_elements, ConstructOptions,
    GroupElement, GroupSpec, Outcome,
};

fn spec858() -> GroupSpec {
    GroupSpec::new(6, 143, 120).expect("valid spec")
}

fn bench_closure_order(c: &mut Criterion) {
    let spec = spec858();
    let gens = [GroupElement { i: 3, j: 1 }, GroupElement { i: 2, j: 1 }];
    c.bench_function("closure_order_pair_858", |b| {
        b.iter(|| std::hint::black_box(spec.closure_order(&gens)))
    });
}

fn bench_construct_pair(c: &mut Criterion) {
    let spec = spec858();
    let gens = [GroupElement { i: 3, j: 1 }, GroupElement { i: 2, j: 1 }];
    let opts = ConstructOptions {
        allow_fallback: false,
        ..ConstructOptions::default()
    };
    c.bench_function("construct_template_pair_858", |b| {
        b.iter(|| {
            let report = construct(&spec, &gens, &opts).expect("constructs");
            assert!(matches!(report.outcome, Outcome::Verified { .. }));
        })
    });
}

fn bench_verify(c: &mut Criterion) {
    let spec = spec858();
    let gens = vec![GroupElement { i: 3, j: 1 }, GroupElement { i: 2, j: 1 }];
    let report = construct(&spec, &gens, &ConstructOptions::default()).expect("constructs");
    let Outcome::Verified { cycle } = report.outcome else {
        panic!("expected verified outcome");
    };
    c.bench_function("verify_cycle_858", |b| {
        b.iter(|| verify_hamiltonian_cycle_elements(&spec, &gens, &cycle).expect("verifies"))
    });
}

fn bench_oracle_small(c: &mut Criterion) {
    let spec = GroupSpec::new(6, 35, 6).expect("valid spec");
    let gens = vec![GroupElement { i: 1, j: 0 }, GroupElement { i: 0, j: 1 }];
    c.bench_function("oracle_cycle_210", |b| {
        b.iter(|| oracle_cycle(&spec, &gens, 5_000_000, 3).expect("oracle finds a cycle"))
    });
}

fn bench_minimal_pairs(c: &mut Criterion) {
    let spec = spec858();
    c.bench_function("minimal_pairs_858", |b| {
        b.iter(|| std::hint::black_box(minimal_pairs(&spec).len()))
    });
}

criterion_group!(
    benches,
    bench_closure_order,
    bench_construct_pair,
    bench_verify,
    bench_oracle_small,
    bench_minimal_pairs
);
criterion_main!(benches);
