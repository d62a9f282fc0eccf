use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dqp_bench::{closure_case, count_cases, deepest_le_system};
use dqp_core::chow::{intersection_number_fulton, intersection_number_ring};
use dqp_core::closure::{in_integral_closure_newton, is_reduction};
use dqp_core::ffcount::count_points;
use dqp_core::le_engine::generic_symmetric_det;

fn chow(c: &mut Criterion) {
    let mut group = c.benchmark_group("chow");
    for p in [3, 4, 5, 6] {
        let system = deepest_le_system(p);
        group.bench_with_input(BenchmarkId::new("ring", p), &system, |b, s| {
            b.iter(|| intersection_number_ring(black_box(s)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("fulton", p), &system, |b, s| {
            b.iter(|| intersection_number_fulton(black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn determinant(c: &mut Criterion) {
    let mut group = c.benchmark_group("symmetric_det");
    for p in [4, 6, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| {
            b.iter(|| generic_symmetric_det(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for p in [2, 4, 6] {
        let (squares, full, m) = closure_case(p);
        group.bench_with_input(BenchmarkId::new("membership", p), &(), |b, _| {
            b.iter(|| in_integral_closure_newton(black_box(&squares), black_box(&m)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("reduction", p), &(), |b, _| {
            b.iter(|| is_reduction(black_box(&squares), black_box(&full)).unwrap())
        });
    }
    group.finish();
}

fn ffcount(c: &mut Criterion) {
    let mut group = c.benchmark_group("ffcount");
    group.sample_size(10);
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    for (label, spec, prime) in count_cases() {
        for j in [1, jobs] {
            group.bench_function(BenchmarkId::new(label.clone(), format!("jobs{j}")), |b| {
                b.iter(|| count_points(&spec, prime, 1, u128::MAX, j).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, chow, determinant, closure, ffcount);
criterion_main!(benches);
