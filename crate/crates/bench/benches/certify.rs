use std::hint::black_box;

use apncert_core::sample::random_poly_a1_nonzero;
use apncert_core::uniformity::{certify_max, ddt_row};
use apncert_core::{FieldCtx, FieldElem};
use criterion::{criterion_group, criterion_main, Criterion};

fn certify(c: &mut Criterion) {
    let mut g = c.benchmark_group("certify");
    g.sample_size(10);
    for n in [16u32, 28] {
        let k = FieldCtx::default_for(n).unwrap();
        let f = random_poly_a1_nonzero(&k, 12, 7, 0);
        g.bench_function(format!("m=12 n={n}"), |bn| bn.iter(|| certify_max(black_box(&f), 1_000_000, 7).unwrap()));
    }
    g.finish();
}

fn ddt(c: &mut Criterion) {
    let mut g = c.benchmark_group("ddt_row");
    g.sample_size(10);
    let k = FieldCtx::default_for(16).unwrap();
    let f = random_poly_a1_nonzero(&k, 12, 8, 0);
    g.bench_function("m=12 n=16", |bn| bn.iter(|| ddt_row(black_box(&f), FieldElem::ONE).unwrap()));
    g.finish();
}

criterion_group!(benches, certify, ddt);
criterion_main!(benches);
