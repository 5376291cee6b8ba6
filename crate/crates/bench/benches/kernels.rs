use criterion::{criterion_group, criterion_main, Criterion};
use radpress_bench::{ar_sm, GAMMA_CASES};
use radpress_core::barrier::{crossover, DEFAULT_D_RANGE};
use radpress_core::fusion::{fit_alpha_s, fluctuation_sum, DEFAULT_L_MAX};
use radpress_core::numerics::ln_inc_gamma_upper_any;
use radpress_core::wick::{count_connected_flux_strict, count_connected_scalar};
use std::hint::black_box;

fn incomplete_gamma(c: &mut Criterion) {
    c.bench_function("ln_inc_gamma_upper_any", |b| {
        b.iter(|| {
            for &(s, x) in &GAMMA_CASES {
                black_box(ln_inc_gamma_upper_any(black_box(s), black_box(x)).unwrap());
            }
        })
    });
}

fn crossover_scan(c: &mut Criterion) {
    c.bench_function("crossover alpha=1/3 v0=0.1", |b| {
        b.iter(|| crossover(black_box(1.0 / 3.0), 0.1, 1, DEFAULT_D_RANGE).unwrap())
    });
}

fn fusion(c: &mut Criterion) {
    let (_, d) = ar_sm();
    c.bench_function("fluctuation_sum l_max=5000", |b| {
        b.iter(|| fluctuation_sum(d.xi, d.x0, black_box(0.27), DEFAULT_L_MAX).unwrap())
    });
    let mut group = c.benchmark_group("fit");
    group.sample_size(20);
    group.bench_function("fit_alpha_s", |b| b.iter(|| fit_alpha_s(d.xi, d.x0, black_box(2.8), DEFAULT_L_MAX).unwrap()));
    group.finish();
}

fn wick(c: &mut Criterion) {
    let mut group = c.benchmark_group("wick");
    group.sample_size(10);
    group.bench_function("scalar n=6", |b| b.iter(|| count_connected_scalar(black_box(6)).unwrap()));
    group.bench_function("flux strict n=6", |b| b.iter(|| count_connected_flux_strict(black_box(6)).unwrap()));
    group.finish();
}

criterion_group!(benches, incomplete_gamma, crossover_scan, fusion, wick);
criterion_main!(benches);
