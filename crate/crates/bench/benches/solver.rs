use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use prismrn_bench::product;
use prismrn_core::{
    all_pairs_distances, construct_best, exact_rn, greedy_from_ordering, heuristic_ordering, paper_literal_labeling,
    star_cycle_product, verify, Variant, DEFAULT_SEEDS,
};

fn bench_distances(c: &mut Criterion) {
    let g = star_cycle_product(20, 40).unwrap();
    c.bench_function("all_pairs_distances_s20_c40", |b| {
        b.iter(|| all_pairs_distances(black_box(&g)).unwrap())
    });
}

fn bench_labeling(c: &mut Criterion) {
    let (_, dm) = product(10, 20);
    let ordering = heuristic_ordering(10, 20, Variant::Antipodal, 0).unwrap();
    c.bench_function("greedy_s10_c20", |b| {
        b.iter(|| greedy_from_ordering(black_box(&dm), black_box(&ordering)).unwrap())
    });

    let literal = paper_literal_labeling(10, 20).unwrap();
    c.bench_function("verify_s10_c20", |b| b.iter(|| verify(black_box(&dm), black_box(&literal)).unwrap()));
}

fn bench_construction(c: &mut Criterion) {
    c.bench_function("construct_best_s6_c11", |b| {
        b.iter(|| construct_best(black_box(6), black_box(11), &DEFAULT_SEEDS).unwrap())
    });
}

fn bench_exact(c: &mut Criterion) {
    let (g, _) = product(2, 4);
    let mut group = c.benchmark_group("exact");
    group.sample_size(10);
    group.bench_function("exact_s2_c4", |b| {
        b.iter(|| exact_rn(black_box(&g), Duration::from_secs(60), &DEFAULT_SEEDS).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_distances, bench_labeling, bench_construction, bench_exact);
criterion_main!(benches);
