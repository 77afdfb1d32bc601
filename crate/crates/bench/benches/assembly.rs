use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use maxplus_fem::elements::reconstruct;
use maxplus_fem::solver::{self, initial_coefficients};
use maxplus_fem::Method;
use maxplus_fem_bench::{assembled, falcone2_setup};
use std::hint::black_box;

fn assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("assemble");
    group.sample_size(10);
    for method in [Method::FemTilde, Method::FemTilde2, Method::FemDual] {
        let (problem, cfg) = falcone2_setup(0.04, method);
        group.bench_with_input(BenchmarkId::from_parameter(method), &cfg, |b, cfg| {
            b.iter(|| solver::assemble(&problem, black_box(cfg)).unwrap())
        });
    }
    group.finish();
}

fn stepping(c: &mut Criterion) {
    let (problem, cfg, ops) = assembled(0.02);
    let grid = cfg.fine_grid(problem.domain()).unwrap();
    let lambda = initial_coefficients(&ops.primal, |x| problem.terminal(x), &grid);
    c.bench_function("step", |b| {
        b.iter(|| solver::step(&ops, black_box(&lambda)).unwrap())
    });
    c.bench_function("step_game", |b| {
        b.iter(|| solver::step_game(&ops, black_box(&lambda)).unwrap())
    });
    c.bench_function("reconstruct", |b| {
        b.iter(|| reconstruct(&ops.primal, black_box(&lambda), &grid).unwrap())
    });
}

criterion_group!(benches, assembly, stepping);
criterion_main!(benches);
