use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spancore::generate::{markov_temporal, CommunityModel};
use spancore::{
    maximal_span_cores, naive_maximal_span_cores, naive_span_cores, span_cores, TemporalGraph,
};

fn workloads() -> Vec<(String, TemporalGraph)> {
    let community = CommunityModel {
        vertices: 500,
        timestamps: 30,
        communities: 10,
        ..CommunityModel::default()
    };
    vec![
        ("markov-200x20".into(), markov_temporal(11, 200, 20, 0.03, 0.8)),
        ("community-500x30".into(), community.generate(3)),
    ]
}

fn full(c: &mut Criterion) {
    let mut group = c.benchmark_group("full");
    group.sample_size(10);
    for (name, g) in workloads() {
        group.bench_with_input(BenchmarkId::new("naive", &name), &g, |b, g| b.iter(|| naive_span_cores(g)));
        group.bench_with_input(BenchmarkId::new("pruned", &name), &g, |b, g| b.iter(|| span_cores(g)));
    }
    group.finish();
}

fn maximal(c: &mut Criterion) {
    let mut group = c.benchmark_group("maximal");
    group.sample_size(10);
    for (name, g) in workloads() {
        group.bench_with_input(BenchmarkId::new("filter", &name), &g, |b, g| {
            b.iter(|| naive_maximal_span_cores(g))
        });
        group.bench_with_input(BenchmarkId::new("direct", &name), &g, |b, g| b.iter(|| maximal_span_cores(g)));
    }
    group.finish();
}

criterion_group!(benches, full, maximal);
criterion_main!(benches);
