use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use truncexp::{eval_e, eval_g, phi, s_series, solve_s, solve_u, u_series, ECaseParams, UCaseParams};

fn eval(c: &mut Criterion) {
    let mut g = c.benchmark_group("eval");
    for n in [1u32, 5, 20] {
        let p = ECaseParams::new(n, 0.5 * f64::from(n + 1)).unwrap();
        g.bench_with_input(BenchmarkId::new("e", n), &p, |b, p| {
            b.iter(|| eval_e(p, black_box(1.3)).unwrap())
        });
        let q = UCaseParams::new(n, f64::from(n) + 0.5).unwrap();
        g.bench_with_input(BenchmarkId::new("g", n), &q, |b, q| {
            b.iter(|| eval_g(q, black_box(1.3)).unwrap())
        });
    }
    g.bench_function("phi", |b| b.iter(|| phi(black_box(0.7)) + phi(black_box(4.0))));
    g.finish();
}

fn solve(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve");
    for n in [0u32, 1, 3, 10] {
        let p = ECaseParams::new(n, 0.6 * f64::from(n + 1)).unwrap();
        g.bench_with_input(BenchmarkId::new("s", n), &p, |b, p| {
            b.iter(|| solve_s(p, 1e-12).unwrap())
        });
    }
    for n in [1u32, 3, 10] {
        let q = UCaseParams::new(n, f64::from(n) + 0.6).unwrap();
        g.bench_with_input(BenchmarkId::new("u", n), &q, |b, q| {
            b.iter(|| solve_u(q, 1e-12).unwrap())
        });
    }
    g.finish();
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    for order in [4usize, 12] {
        g.bench_with_input(BenchmarkId::new("s", order), &order, |b, &m| {
            b.iter(|| s_series(3, black_box(0.05), m).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("u", order), &order, |b, &m| {
            b.iter(|| u_series(3, black_box(0.05), m).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, eval, solve, series);
criterion_main!(benches);
