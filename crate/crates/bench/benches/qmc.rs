use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cfqmc::discrepancy::star_discrepancy_exact;
use cfqmc::estimate::{run_estimator, Method, SurrogateConfig};
use cfqmc::{builtin, fit_grid_surrogate, fit_kernel_surrogate, generate, KernelParams, SequenceSpec};

fn sequences(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate");
    for n in [1usize << 10, 1 << 14] {
        group.bench_with_input(BenchmarkId::new("halton-3d", n), &n, |b, &n| {
            b.iter(|| generate(black_box(&SequenceSpec::halton(3)), n).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("scrambled-shifted-halton-3d", n), &n, |b, &n| {
            b.iter(|| generate(black_box(&SequenceSpec::scrambled_shifted_halton(3, 7)), n).unwrap())
        });
    }
    group.finish();
}

fn discrepancy(c: &mut Criterion) {
    let ps = generate(&SequenceSpec::halton(2), 128).unwrap();
    c.bench_function("star-discrepancy-exact-2d-128", |b| b.iter(|| star_discrepancy_exact(black_box(&ps)).unwrap()));
}

fn surrogates(c: &mut Criterion) {
    let fig1 = builtin("fig1", 1).unwrap();
    c.bench_function("grid-surrogate-fit-2048", |b| b.iter(|| fit_grid_surrogate(black_box(&fig1), 2048).unwrap()));
    let v = generate(&SequenceSpec::midpoint_grid(1, 256), 256).unwrap();
    let p = KernelParams::new(0.1, 1e-8);
    c.bench_function("kernel-surrogate-fit-256", |b| {
        b.iter(|| fit_kernel_surrogate(black_box(&fig1), &v, p.lengthscale, p.ridge).unwrap())
    });
}

fn estimators(c: &mut Criterion) {
    let fig1 = builtin("fig1", 1).unwrap();
    let mut group = c.benchmark_group("estimator-fig1-4096x20");
    for method in Method::ALL {
        group.bench_function(method.as_str(), |b| {
            b.iter(|| run_estimator(method, &fig1, 4096, 20, 1, &SurrogateConfig::Grid).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sequences, discrepancy, surrogates, estimators);
criterion_main!(benches);
