use std::f64::consts::PI;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use qdeficit::{
    deficit_report, eigh, mi_triple, sample_pmf, theta_grid, theta_sweep, verify_inequality_chain,
    ComplexMatrix, LogBase, NamedState, StateSpec,
};
use std::hint::black_box;

fn hermitian(dim: usize) -> ComplexMatrix {
    // Fixed, well-conditioned test matrix.
    ComplexMatrix::from_fn(dim, |i, j| {
        let (a, b) = (i.min(j) as f64, i.max(j) as f64);
        let im = if i < j { 0.1 * (a + 1.0) } else if i > j { -0.1 * (a + 1.0) } else { 0.0 };
        Complex64::new(1.0 / (1.0 + a + b), im)
    })
}

fn eigensolver(c: &mut Criterion) {
    for dim in [2, 4, 8] {
        let m = hermitian(dim);
        c.bench_function(&format!("eigh {dim}x{dim}"), |b| b.iter(|| eigh(black_box(&m)).unwrap()));
    }
}

fn deficits(c: &mut Criterion) {
    let w = StateSpec::Named(NamedState::WWBar);
    c.bench_function("deficit_report WWBAR", |b| {
        b.iter(|| deficit_report(black_box(&w), LogBase::Nats).unwrap())
    });
    let grid = theta_grid(0.02, PI, 0.02).unwrap();
    let powers: Vec<u32> = (1..=12).collect();
    c.bench_function("theta_sweep default grid", |b| {
        b.iter(|| theta_sweep(black_box(&grid), &powers, LogBase::Nats).unwrap())
    });
}

fn classical(c: &mut Criterion) {
    c.bench_function("sample + chain 3x3x3", |b| {
        let mut seed = 0u64;
        b.iter(|| {
            seed += 1;
            let pmf = sample_pmf([3, 3, 3], seed).unwrap();
            (verify_inequality_chain(&pmf, LogBase::Nats), mi_triple(&pmf, LogBase::Nats))
        })
    });
}

criterion_group!(benches, eigensolver, deficits, classical);
criterion_main!(benches);
