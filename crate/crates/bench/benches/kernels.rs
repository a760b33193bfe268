use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use thinfree_core::polyalg::{harmonic_extension, Parity};
use thinfree_core::setgeom::distance_to_set;
use thinfree_core::vi_solver::{build_domain, solve_with, SolveOptions, SweepOrder};
use thinfree_core::{parse_poly, ObstacleProblemSpec, ThinSet};

const SWEEPS: usize = 10;

fn psor(c: &mut Criterion) {
    let mut g = c.benchmark_group("psor_10_sweeps");
    for h in [1.0 / 8.0, 1.0 / 16.0] {
        let d = build_domain(2, 4.0, h).unwrap();
        // tol far below reach so every run does exactly SWEEPS sweeps
        let spec = ObstacleProblemSpec::from_fns(d, |x| 0.5 - x[0] * x[0] - x[1] * x[1], |_| 0.0)
            .unwrap()
            .with_tol(1e-300)
            .unwrap()
            .with_max_sweeps(SWEEPS);
        for (label, order) in [("lexicographic", SweepOrder::Lexicographic), ("red_black_4", SweepOrder::RedBlack { workers: 4 })] {
            g.bench_with_input(BenchmarkId::new(label, 1.0 / h), &spec, |b, s| {
                b.iter(|| solve_with(black_box(s), &SolveOptions { order, initial: None }))
            });
        }
    }
    g.finish();
}

fn edt(c: &mut Criterion) {
    let mut g = c.benchmark_group("distance_transform");
    for h in [1.0 / 32.0, 1.0 / 64.0] {
        let d = build_domain(2, 2.0, h).unwrap();
        let set = ThinSet::from_predicate(&d, |x| (x[0] - 0.3).abs() < 0.05 || x[0] * x[1] > 0.5);
        g.bench_with_input(BenchmarkId::from_parameter(1.0 / h), &set, |b, s| b.iter(|| distance_to_set(black_box(s))));
    }
    g.finish();
}

fn extension(c: &mut Criterion) {
    let mut g = c.benchmark_group("harmonic_extension");
    for (label, text) in [("deg4", "x1^2*x2^2 - x1^4"), ("deg12", "(x1^2 + x2^2 - 1)^6"), ("deg20", "(x1^2 + x2^2)^10 + x1^3*x2")] {
        let p = parse_poly(text, 2).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(label), &p, |b, p| {
            b.iter(|| harmonic_extension(black_box(p), Parity::Even))
        });
    }
    g.finish();
}

criterion_group!(benches, psor, edt, extension);
criterion_main!(benches);
