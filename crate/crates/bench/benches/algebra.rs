use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use wp_core::comm::{build_gra, build_rtilde};
use wp_core::tate::{build_tate, image_pi_sharp_dims};
use wp_core::wp::build_wp_instance;

fn groebner(c: &mut Criterion) {
    c.bench_function("groebner gra p=3", |b| b.iter(|| build_gra(black_box(3)).unwrap().dim().unwrap()));
    c.bench_function("groebner rtilde p=2", |b| {
        b.iter(|| build_rtilde(black_box(2)).unwrap().dim().unwrap())
    });
}

fn yoneda(c: &mut Criterion) {
    let inst = build_wp_instance(3).unwrap();
    c.bench_function("yoneda dims p=3 n<=6", |b| b.iter(|| inst.yoneda_dims(black_box(6)).unwrap()));
}

fn tate(c: &mut Criterion) {
    let t = build_tate(2).unwrap();
    c.bench_function("tate d^2 through degree 3", |b| b.iter(|| t.check_d_squared(black_box(3)).unwrap()));
    c.bench_function("pi sharp image dims n<=8", |b| b.iter(|| image_pi_sharp_dims(black_box(2), 8).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = groebner, yoneda, tate
}
criterion_main!(benches);
