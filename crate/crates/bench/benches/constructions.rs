use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use stone_groupoid::constructions::{normal_basis, reconstruct, skeletal_replacement, van_dantzig};
use stone_groupoid::presentation::{fundamental_group, DEFAULT_COSET_LIMIT};
use stone_groupoid::realization::{limit_commutation_check, pipeline};
use stone_groupoid::{revalidate, DEFAULT_ORACLE_BOUND};
use stone_groupoid_bench as fixtures;

fn groupoids(c: &mut Criterion) {
    let mut group = c.benchmark_group("groupoid");
    for size in [16, 64, 256] {
        let g = fixtures::groupoid(size);
        group.bench_with_input(BenchmarkId::new("validate", size), &g, |b, g| b.iter(|| revalidate(black_box(g))));
        group.bench_with_input(BenchmarkId::new("skeletonize", size), &g, |b, g| {
            b.iter(|| skeletal_replacement(black_box(g)))
        });
    }
    for size in [12, 24] {
        let (g, u) = fixtures::with_neighborhood(size);
        group.bench_with_input(BenchmarkId::new("vandantzig", size), &(g, u), |b, (g, u)| {
            b.iter(|| van_dantzig(black_box(g), black_box(u)))
        });
        let x = fixtures::skeletal(size);
        group.bench_with_input(BenchmarkId::new("reconstruct", size), &x, |b, x| {
            b.iter(|| {
                let basis = normal_basis(x).unwrap();
                reconstruct(black_box(x), &basis).unwrap()
            })
        });
    }
    group.finish();
}

fn towers(c: &mut Criterion) {
    let mut group = c.benchmark_group("tower");
    for levels in [3, 5] {
        let t = fixtures::cyclic(2, levels);
        group.bench_with_input(BenchmarkId::new("pipeline-cyclic", levels), &t, |b, t| {
            b.iter(|| pipeline(black_box(t), None, DEFAULT_ORACLE_BOUND).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("limit-check", levels), &t, |b, t| {
            b.iter(|| limit_commutation_check(black_box(t), t.depth()).unwrap())
        });
    }
    let t = fixtures::action(3, 3);
    group.bench_function("pipeline-action-3", |b| {
        b.iter(|| pipeline(black_box(&t), None, DEFAULT_ORACLE_BOUND).unwrap())
    });
    group.finish();
}

fn coset_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("fundamental-group");
    for n in [3, 4] {
        let g = fixtures::connected_symmetric(n);
        group.bench_with_input(BenchmarkId::new("pair-x-symmetric", n), &g, |b, g| {
            b.iter(|| fundamental_group(black_box(g), 0, DEFAULT_COSET_LIMIT).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, groupoids, towers, coset_enumeration);
criterion_main!(benches);
