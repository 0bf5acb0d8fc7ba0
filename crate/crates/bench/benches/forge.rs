use std::hint::black_box;

use covariant_forge::hilbert::{h_kn, GradedOracle};
use covariant_forge::verifier::verify_free_generation_with;
use covariant_forge::{v2_generators, v3_free_basis, ActionContext, Prime};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn action(c: &mut Criterion) {
    let p = Prime::new(7).unwrap();
    let ctx = ActionContext::new(p, 3).unwrap();
    let f = ctx
        .parse("x1^4*x2^2 + 3*x1*x2^3*x3^2 + x2^6 + 5*x1^2*x3^4")
        .unwrap();
    c.bench_function("delta_chain/p7_m3", |b| {
        b.iter(|| ctx.delta_chain(black_box(&f)).unwrap())
    });
    c.bench_function("norm/p7_m3", |b| b.iter(|| ctx.norm(black_box(1)).unwrap()));
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for p in [5u64, 7] {
        let prime = Prime::new(p).unwrap();
        let cutoff = 2 * p as u32 + 6;
        group.bench_with_input(BenchmarkId::new("v3", p), &prime, |b, &prime| {
            b.iter(|| GradedOracle::new(prime, 3, cutoff).unwrap())
        });
    }
    group.finish();
}

fn series(c: &mut Criterion) {
    let p = Prime::new(7).unwrap();
    c.bench_function("h_kn/p7_m3_n5", |b| {
        b.iter(|| h_kn(3, black_box(5), p).unwrap().series().expand(40))
    });
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_free_generation");
    group.sample_size(10);
    let p = Prime::new(7).unwrap();
    let oracle = GradedOracle::new(p, 2, 21).unwrap();
    let gens = v2_generators(p, 7).unwrap();
    group.bench_function("v2/p7_n7", |b| {
        b.iter(|| verify_free_generation_with(&gens, &oracle, 21).unwrap())
    });
    let p = Prime::new(5).unwrap();
    let oracle = GradedOracle::new(p, 3, 16).unwrap();
    let gens = v3_free_basis(p, 4).unwrap();
    group.bench_function("v3/p5_n4", |b| {
        b.iter(|| verify_free_generation_with(&gens, &oracle, 16).unwrap())
    });
    group.finish();
}

criterion_group!(benches, action, oracle, series, verify);
criterion_main!(benches);
