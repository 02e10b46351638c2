use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use srg_core::exactlin::{det, gram_path, int};
use srg_core::replay::{agreement_code_search, min_projection, replay_all, InnerModel};
use srg_core::roots::{cartan, short_vectors, LatticeGram, RootType};

fn linear_algebra(c: &mut Criterion) {
    let g = gram_path(40);
    c.bench_function("det gram_path(40)", |b| b.iter(|| det(black_box(&g))));
}

fn projections(c: &mut Criterion) {
    let m = InnerModel::srg76();
    c.bench_function("min_projection s=5 free", |b| b.iter(|| min_projection(&m, black_box(5), false).unwrap()));
    c.bench_function("min_projection s=5 forced", |b| b.iter(|| min_projection(&m, black_box(5), true).unwrap()));
}

fn roots(c: &mut Criterion) {
    let lat = LatticeGram::new(cartan(RootType::E, 6).unwrap()).unwrap();
    c.bench_function("short_vectors E6", |b| b.iter(|| short_vectors(&lat, &int(2)).unwrap()));
}

fn search(c: &mut Criterion) {
    c.bench_function("code search (5,7,3,1)", |b| b.iter(|| agreement_code_search(5, 7, black_box(3), 1).unwrap()));
    let mut g = c.benchmark_group("replay");
    g.sample_size(10);
    g.bench_function("replay_all", |b| b.iter(replay_all));
    g.finish();
}

criterion_group!(benches, linear_algebra, projections, roots, search);
criterion_main!(benches);
