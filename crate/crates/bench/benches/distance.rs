use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use metricdim::bfs_all_pairs;
use metricdim::constructions::grid;
use metricdim_bench::corpus;

fn bench_bfs(c: &mut Criterion) {
    let mut group = c.benchmark_group("bfs_all_pairs");
    let mut inputs = corpus();
    inputs.push(("grid-2x31", grid(&[2, 31]).unwrap()));
    for (name, g) in inputs {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| b.iter(|| bfs_all_pairs(black_box(g))));
    }
    group.finish();
}

criterion_group!(benches, bench_bfs);
criterion_main!(benches);
