use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use labelnoise::data::{example2_dataset, iris_dataset};
use labelnoise::experiments::{run_iris, separable_dataset, Algorithm};
use labelnoise::minimizers::{
    fld, least_squares, minimize_hinge, minimize_smooth_convex, minimize_zero_one_exact, minimize_zero_one_stochastic,
};
use labelnoise::noise::inject;
use labelnoise::rng::stream_rng;
use labelnoise::{LossKind, NoiseSpec, SolverConfig};

fn convex(c: &mut Criterion) {
    let iris = iris_dataset();
    let noisy = inject(&iris, &NoiseSpec::Uniform(0.3), 1).unwrap().training_set();
    let config = SolverConfig::default();
    let mut g = c.benchmark_group("iris, 30% uniform noise");
    g.bench_function("least squares", |b| {
        b.iter(|| least_squares(black_box(&noisy), true, None).unwrap())
    });
    g.bench_function("fld", |b| b.iter(|| fld(black_box(&noisy)).unwrap()));
    g.bench_function("log loss newton", |b| {
        b.iter(|| minimize_smooth_convex(black_box(&noisy), LossKind::Log, None, None, &config).unwrap())
    });
    g.bench_function("hinge lp", |b| {
        b.iter(|| minimize_hinge(black_box(&noisy), None, &config).unwrap())
    });
    g.sample_size(10);
    g.bench_function("0-1 annealing", |b| {
        b.iter(|| minimize_zero_one_stochastic(black_box(&noisy), &config).unwrap())
    });
    g.finish();
}

fn zero_one_exact(c: &mut Criterion) {
    let d2 = example2_dataset();
    let etas = labelnoise::data::example2_etas(0.4);
    let planar = separable_dataset(&mut stream_rng(3, 0), 50, 2);
    let mut g = c.benchmark_group("exact 0-1 search");
    g.bench_function("36 points, d = 2", |b| {
        b.iter(|| minimize_zero_one_exact(black_box(&d2), Some(&etas)).unwrap())
    });
    g.bench_function("50 points, d = 2", |b| {
        b.iter(|| minimize_zero_one_exact(black_box(&planar), None).unwrap())
    });
    g.finish();
}

fn study(c: &mut Criterion) {
    let mut g = c.benchmark_group("iris study");
    g.sample_size(10);
    g.bench_function("1 trial, uniform 20%, all algorithms", |b| {
        b.iter(|| run_iris(1, black_box(42), &[NoiseSpec::Uniform(0.2)], &Algorithm::ALL).unwrap())
    });
    g.finish();
}

criterion_group!(benches, convex, zero_one_exact, study);
criterion_main!(benches);
