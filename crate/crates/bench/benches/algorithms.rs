use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use dgar::dga::models::sphere;
use dgar::loop_sphere::{decompose, sphere_ar_triangle, verify_ar_triangle, SphereIndecLabel};
use dgar::quiver::build_quiver;
use dgar::resolution::minimal_resolution;
use dgar::{DgModule, Field, Side};
use dgar_bench::{dense_matrix, kt_module};

fn rref(c: &mut Criterion) {
    let mut g = c.benchmark_group("rref");
    for n in [8, 16, 32] {
        let m = dense_matrix(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| black_box(m.rref()))
        });
    }
    g.finish();
}

fn resolution(c: &mut Criterion) {
    let mut g = c.benchmark_group("minimal_resolution_k");
    for d in [2, 3, 5] {
        let r = Arc::new(sphere(Field::Rational, d).unwrap());
        let k = DgModule::simple(r, Side::Left);
        let window = 6 * (d - 1) as u32;
        g.bench_with_input(BenchmarkId::from_parameter(d), &k, |b, k| {
            b.iter(|| black_box(minimal_resolution(k, window).unwrap()))
        });
    }
    g.finish();
}

fn kt_decompose(c: &mut Criterion) {
    let mut g = c.benchmark_group("kt_decompose");
    for (jmax, mmax) in [(2, 2), (4, 4), (5, 6)] {
        let m = kt_module(3, jmax, mmax);
        g.bench_with_input(
            BenchmarkId::new("blocks", format!("{jmax}x{mmax}")),
            &m,
            |b, m| b.iter(|| black_box(decompose(m).unwrap())),
        );
    }
    g.finish();
}

fn sphere_side(c: &mut Criterion) {
    let tri = sphere_ar_triangle(&SphereIndecLabel::new(4, -2, 4)).unwrap();
    c.bench_function("verify_ar_triangle", |b| {
        b.iter(|| black_box(verify_ar_triangle(&tri).unwrap()))
    });
    c.bench_function("build_quiver_d5", |b| {
        b.iter(|| black_box(build_quiver(5, -12, 12, 6).unwrap()))
    });
}

criterion_group!(benches, rref, resolution, kt_decompose, sphere_side);
criterion_main!(benches);
