use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use cvop::par;
use cvop::sweep::{evaluate, EvalConfig, Metric, Strategy};

fn grid(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .flat_map(|i| {
            (0..n).map(move |j| {
                (
                    0.05 + 0.9 * i as f64 / (n - 1) as f64,
                    j as f64 / (n - 1) as f64,
                )
            })
        })
        .collect()
}

fn point(metric: Metric, &(s, r): &(f64, f64)) -> f64 {
    evaluate(
        metric,
        Strategy::CoherentAB,
        s,
        Some(r),
        &EvalConfig::default(),
    )
    .unwrap()
}

fn bench_grid(c: &mut Criterion) {
    let points = grid(16);
    for metric in [Metric::Fidelity, Metric::Entropy] {
        let mut group = c.benchmark_group(format!("{metric}_grid_16x16"));
        group.sample_size(10);
        group.bench_function("parallel", |b| {
            b.iter(|| par::map(black_box(&points), |p| point(metric, p)))
        });
        group.bench_function("sequential", |b| {
            b.iter(|| par::map_sequential(black_box(&points), |p| point(metric, p)))
        });
        group.finish();
    }
}

criterion_group!(benches, bench_grid);
criterion_main!(benches);
