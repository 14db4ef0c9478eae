use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pauli_lgr::{enumerate_generators, Correspondence, Stratification, TRankTable};
use rayon::{ThreadPool, ThreadPoolBuilder};

fn pools() -> Vec<(String, ThreadPool)> {
    let all = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .max(2);
    [1, all]
        .into_iter()
        .map(|t| {
            let name = if t == 1 {
                "sequential".to_string()
            } else {
                format!("parallel-{t}")
            };
            (
                name,
                ThreadPoolBuilder::new().num_threads(t).build().unwrap(),
            )
        })
        .collect()
}

fn pipeline(c: &mut Criterion) {
    let pools = pools();
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    for (name, pool) in &pools {
        group.bench_function(BenchmarkId::new("enumerate_n5", name), |b| {
            b.iter(|| pool.install(|| enumerate_generators(5).unwrap().len()))
        });
        group.bench_function(BenchmarkId::new("correspondence_n4", name), |b| {
            b.iter(|| pool.install(|| Correspondence::build(4).unwrap().image_size()))
        });
        group.bench_function(BenchmarkId::new("stratify_n4", name), |b| {
            b.iter(|| pool.install(|| Stratification::compute(4).unwrap().orbits().len()))
        });
        group.bench_function(BenchmarkId::new("t_rank_n4", name), |b| {
            b.iter(|| pool.install(|| TRankTable::build(4).unwrap().max_rank()))
        });
    }
    group.finish();
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
