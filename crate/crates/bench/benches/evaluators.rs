//! Timings for the partition-function and correlator evaluators at small N,
//! comparing the determinant path against the exponential-cost oracles.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sixv_core::determinant::{h_det, z_det, z_perm};
use sixv_core::enumeration::z_by_enumeration;
use sixv_core::homogeneous::{z_hom, HomogeneousParams};
use sixv_core::qism::z_via_monodromy;
use sixv_core::sample::sample_params;
use sixv_core::scalar::c64;

fn partition_function(c: &mut Criterion) {
    let mut group = c.benchmark_group("partition_function");
    for n in [3usize, 5, 7] {
        let p = sample_params(n, 7).unwrap();
        group.bench_with_input(BenchmarkId::new("det", n), &p, |b, p| {
            b.iter(|| z_det(p).unwrap())
        });
        if n <= 7 {
            group.bench_with_input(BenchmarkId::new("perm", n), &p, |b, p| {
                b.iter(|| z_perm(p).unwrap())
            });
            group.bench_with_input(BenchmarkId::new("enum", n), &p, |b, p| {
                b.iter(|| z_by_enumeration(p).unwrap())
            });
        }
        group.bench_with_input(BenchmarkId::new("qism", n), &p, |b, p| {
            b.iter(|| z_via_monodromy(p).unwrap())
        });
    }
    group.finish();
}

fn correlator(c: &mut Criterion) {
    let mut group = c.benchmark_group("turn_probability");
    for n in [4usize, 6] {
        let p = sample_params(n, 11).unwrap();
        group.bench_with_input(BenchmarkId::new("det", n), &p, |b, p| {
            b.iter(|| h_det(p, n / 2).unwrap())
        });
    }
    group.finish();
}

fn homogeneous(c: &mut Criterion) {
    let mut group = c.benchmark_group("homogeneous_z");
    for n in [4usize, 8, 16] {
        let p = HomogeneousParams::new(c64(0.9, 0.4), c64(0.37, 0.21), n);
        group.bench_with_input(BenchmarkId::new("jet", n), &p, |b, p| {
            b.iter(|| z_hom(p).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, partition_function, correlator, homogeneous);
criterion_main!(benches);
