use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use semidirac::assembly::assemble_t;
use semidirac::eigensolve::{band_permutation, dense_eigs, gap_eigs, interval_count, DenseOptions, GapOptions};
use semidirac::linalg::BandLdl;
use semidirac::Params;
use semidirac_bench::{free, grid, probe, with_box};

fn assembly(c: &mut Criterion) {
    let p = Params::new(1.0).unwrap();
    let mut group = c.benchmark_group("assemble_t");
    for ny in [21, 41, 81] {
        let g = grid(ny);
        group.bench_with_input(BenchmarkId::from_parameter(ny), &g, |b, g| {
            b.iter(|| assemble_t(black_box(g), &p))
        });
    }
    group.finish();
}

fn matvec(c: &mut Criterion) {
    let mut group = c.benchmark_group("matvec");
    for ny in [41, 81] {
        let op = free(ny);
        let x = probe(op.dim());
        let mut y = vec![Default::default(); op.dim()];
        group.bench_function(BenchmarkId::new("serial", ny), |b| {
            b.iter(|| op.matrix().matvec(black_box(&x), &mut y))
        });
        group.bench_function(BenchmarkId::new("parallel", ny), |b| {
            b.iter(|| op.matrix().matvec_par(black_box(&x), &mut y))
        });
    }
    group.finish();
}

fn factor(c: &mut Criterion) {
    let mut group = c.benchmark_group("band_ldl");
    group.sample_size(10);
    for ny in [21, 41] {
        let op = free(ny);
        let perm = band_permutation(&op);
        let shifted = op.matrix().shifted(0.5);
        group.bench_function(BenchmarkId::new("factor", ny), |b| {
            b.iter(|| BandLdl::factor(black_box(&shifted), perm.clone()).unwrap())
        });
        group.bench_function(BenchmarkId::new("interval_count", ny), |b| {
            b.iter(|| interval_count(op.matrix(), perm.as_ref(), -0.9, 0.9).unwrap())
        });
    }
    group.finish();
}

fn eigensolvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigensolve");
    group.sample_size(10);
    let op = with_box(21);
    group.bench_function("gap_eigs_box_21", |b| {
        b.iter(|| gap_eigs(&op, -2.0, 2.0, 4, &GapOptions::default()).unwrap())
    });
    let small = with_box(11);
    group.bench_function("dense_box_11", |b| {
        b.iter(|| dense_eigs(&small, &DenseOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, assembly, matvec, factor, eigensolvers);
criterion_main!(benches);
