use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use modsat::brauer::satake_matrix;
use modsat::charring::{weyl_character_bounded, Ring};
use modsat::linalg::smith::smith_of;
use modsat::rootdata::RootDatum;
use modsat_bench::{a2_base_change_setup, a2_fold_setup, dense_matrix, inner_a2_setup};

fn smith(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith_normal_form");
    for n in [4, 8, 10] {
        let m = dense_matrix(n, 7);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| smith_of(black_box(m)).unwrap()));
    }
    g.finish();
}

fn freudenthal(c: &mut Criterion) {
    let mut g = c.benchmark_group("weyl_character");
    for (label, lambda) in [("B3", vec![1, 1, 1]), ("G2", vec![2, 2]), ("A4", vec![1, 0, 1, 1])] {
        let d = Arc::new(RootDatum::from_label(label).unwrap());
        g.bench_function(label, |b| b.iter(|| weyl_character_bounded(&d, black_box(&lambda), Ring::Z, 64).unwrap()));
    }
    g.finish();
}

fn satake(c: &mut Criterion) {
    let mut g = c.benchmark_group("satake_matrix");
    g.sample_size(10);
    let a2 = inner_a2_setup();
    g.bench_function("inner_A2_l3_bound8", |b| b.iter(|| satake_matrix(&a2, black_box(8)).unwrap()));
    let fold = a2_fold_setup();
    g.bench_function("fold_A2_l2_bound12", |b| b.iter(|| satake_matrix(&fold, black_box(12)).unwrap()));
    let bc = a2_base_change_setup();
    g.bench_function("base_change_A2_l3_bound4", |b| b.iter(|| satake_matrix(&bc, black_box(4)).unwrap()));
    g.finish();
}

criterion_group!(kernels, smith, freudenthal, satake);
criterion_main!(kernels);
