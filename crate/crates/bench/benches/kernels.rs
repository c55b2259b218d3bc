use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pgrowth::field::rat;
use pgrowth::invariants::{Context, WellArrangedConfig};
use pgrowth::series::{growth_series, DEFAULT_GUARD};
use pgrowth::{
    ball, convex_hull, enumerate_cycles, fit_rational, fixtures, CycleSpace, Polynomial,
    ShiftedEhrhartProblem, Vertex, DEFAULT_MAX_CYCLES, DEFAULT_MAX_STATES,
};
use pgrowth_bench::{cloud, nets, SACADA_60};

fn balls(c: &mut Criterion) {
    let mut group = c.benchmark_group("ball");
    for (name, g) in nets() {
        let x0 = Vertex::origin(0, g.rank());
        group.bench_function(BenchmarkId::new(name, 16), |b| {
            b.iter(|| ball(black_box(&g), &x0, 16, DEFAULT_MAX_STATES).unwrap())
        });
    }
    group.finish();
}

fn hulls(c: &mut Criterion) {
    let mut group = c.benchmark_group("hull");
    for (count, dim) in [(50, 2), (50, 3), (200, 3), (60, 4)] {
        let pts = cloud(count, dim);
        group.bench_function(BenchmarkId::new(format!("{dim}d"), count), |b| {
            b.iter(|| convex_hull(black_box(&pts), false).unwrap())
        });
    }
    group.finish();
}

fn cycles(c: &mut Criterion) {
    let mut group = c.benchmark_group("cycles");
    for (name, g) in nets() {
        group.bench_function(name, |b| {
            b.iter(|| enumerate_cycles(black_box(&g), DEFAULT_MAX_CYCLES).unwrap())
        });
    }
    group.finish();
}

fn fits(c: &mut Criterion) {
    let mut group = c.benchmark_group("fit");
    let den = Polynomial::one_minus_t_pow(12).pow(3);
    group.bench_function("sacada-60", |b| {
        b.iter(|| fit_rational(black_box(&SACADA_60), &den, 0).unwrap())
    });
    let g = fixtures::dia();
    let r = fixtures::dia_realization();
    let space = CycleSpace::new(&g, DEFAULT_MAX_CYCLES).unwrap();
    let ctx = Context::new(&g, &space, &r, Vertex::origin(0, 3), DEFAULT_MAX_STATES).unwrap();
    group.bench_function("dia-pipeline", |b| {
        b.iter(|| growth_series(&ctx, &WellArrangedConfig::default(), DEFAULT_GUARD).unwrap())
    });
    group.finish();
}

fn ehrhart(c: &mut Criterion) {
    let p = convex_hull(&cloud(12, 2), false).unwrap();
    let problem = ShiftedEhrhartProblem::new(p, vec![rat(1, 2), rat(-1, 3)], rat(1, 3)).unwrap();
    c.bench_function("ehrhart/count-d40", |b| {
        b.iter(|| problem.count(black_box(40)).unwrap())
    });
}

criterion_group!(benches, balls, hulls, cycles, fits, ehrhart);
criterion_main!(benches);
