//! Scalarization throughput: the closed forms against the bisection
//! oracle, per cone family.

use std::hint::black_box;

use conekit::Scalarizer;
use conekit_bench::{cones, vectors};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_xi(c: &mut Criterion) {
    let inputs = vectors(256, 5, 31);
    let mut group = c.benchmark_group("xi_closed_form");
    for (name, cone) in cones() {
        let s = Scalarizer::new(cone);
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, s| {
            b.iter(|| {
                for y in &inputs {
                    black_box(s.xi(black_box(y)).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn bench_xi_oracle(c: &mut Criterion) {
    let inputs = vectors(16, 5, 37);
    let mut group = c.benchmark_group("xi_bisection_oracle");
    for (name, cone) in cones() {
        let s = Scalarizer::new(cone);
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, s| {
            b.iter(|| {
                for y in &inputs {
                    black_box(s.xi_oracle(black_box(y), 1e-10).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn bench_membership(c: &mut Criterion) {
    let inputs = vectors(256, 5, 41);
    let mut group = c.benchmark_group("cone_membership");
    for (name, cone) in cones() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &cone, |b, cone| {
            b.iter(|| {
                for y in &inputs {
                    black_box(cone.contains(black_box(y)).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_xi, bench_xi_oracle, bench_membership);
criterion_main!(benches);
