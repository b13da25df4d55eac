use criterion::{black_box, criterion_group, criterion_main, Criterion};

use pgcaps::construct::c4_construct;
use pgcaps::search::{
    all_complete_caps, canonical_slice, enumerate_structured, partition_search, PartitionMode,
};
use pgcaps::Dim;

fn exhaustive(c: &mut Criterion) {
    let mut g = c.benchmark_group("exhaustive");
    g.sample_size(10);
    g.bench_function("all_complete_caps/3", |b| {
        b.iter(|| all_complete_caps(black_box(Dim::new(3).unwrap())))
    });
    g.bench_function("all_complete_caps/4", |b| {
        b.iter(|| all_complete_caps(black_box(Dim::new(4).unwrap())))
    });
    g.finish();
}

fn structured(c: &mut Criterion) {
    let mut g = c.benchmark_group("structured");
    g.sample_size(10);
    let (frame, slice) = canonical_slice(Dim::new(5).unwrap(), 3, None).unwrap();
    g.bench_function("three_point_slice/5", |b| {
        b.iter(|| enumerate_structured(&frame, black_box(&slice)))
    });
    g.finish();
}

fn partitions(c: &mut Criterion) {
    let mut g = c.benchmark_group("partitions");
    g.sample_size(10);
    g.bench_function("exhaustive/k3_r2", |b| {
        b.iter(|| partition_search(3, 2, black_box(PartitionMode::Exhaustive)))
    });
    g.bench_function("randomized/k4_r2", |b| {
        b.iter(|| {
            partition_search(
                4,
                2,
                black_box(PartitionMode::Randomized {
                    seed: 1,
                    steps: 1 << 20,
                }),
            )
        })
    });
    g.finish();
}

fn four_point(c: &mut Criterion) {
    let mut g = c.benchmark_group("four_point");
    g.sample_size(10);
    let dim = Dim::new(6).unwrap();
    g.bench_function("sufficient_route/6", |b| {
        b.iter(|| c4_construct(dim, black_box(1), 2))
    });
    g.bench_function("search_route/6", |b| {
        b.iter(|| c4_construct(dim, black_box(0), 2))
    });
    g.finish();
}

criterion_group!(benches, exhaustive, structured, partitions, four_point);
criterion_main!(benches);
