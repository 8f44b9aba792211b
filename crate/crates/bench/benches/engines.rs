use criterion::{black_box, criterion_group, criterion_main, Criterion};

use hsc_core::codes::{bz_min_distance, column_min_distance, exhaustive_min_distance};
use hsc_core::harness::CodeContext;
use hsc_core::{FieldTower, PrimePower};

fn field(c: &mut Criterion) {
    let f = FieldTower::build(PrimePower::from_q(4).unwrap()).unwrap();
    let xs: Vec<_> = f.elements().take(1000).collect();
    c.bench_function("tower_q4_mul_add_1000", |b| {
        b.iter(|| {
            xs.iter()
                .fold(f.primitive(), |acc, &x| f.add(f.mul(acc, x), x))
        })
    });
    c.bench_function("tower_q3_build", |b| {
        b.iter(|| FieldTower::build(black_box(PrimePower::from_q(3).unwrap())).unwrap())
    });
}

fn engines(c: &mut Criterion) {
    let c3 = CodeContext::new(3, 0).unwrap();
    let c4 = CodeContext::new(4, 0).unwrap();
    let sub4 = c4.subcode().unwrap();
    let diff3 = c3.differential();
    let diff4 = c4.differential();
    let mut g = c.benchmark_group("min_distance");
    g.sample_size(10);
    g.bench_function("exhaustive_q3_functional", |b| {
        b.iter(|| exhaustive_min_distance(&c3.functional, u128::MAX, 1).unwrap())
    });
    g.bench_function("exhaustive_q4_subcode", |b| {
        b.iter(|| exhaustive_min_distance(&sub4, u128::MAX, 1).unwrap())
    });
    g.bench_function("columns_q3_differential", |b| {
        b.iter(|| column_min_distance(&diff3, u128::MAX, 1).unwrap())
    });
    g.bench_function("columns_q4_differential", |b| {
        b.iter(|| column_min_distance(&diff4, u128::MAX, 1).unwrap())
    });
    g.bench_function("bz_q4_subcode", |b| b.iter(|| bz_min_distance(&sub4, u128::MAX, None)));
    g.finish();
}

fn construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("construction");
    g.sample_size(10);
    g.bench_function("context_q3", |b| b.iter(|| CodeContext::new(3, 0).unwrap()));
    g.bench_function("context_q4", |b| b.iter(|| CodeContext::new(4, 0).unwrap()));
    g.finish();
}

criterion_group!(benches, field, engines, construction);
criterion_main!(benches);
