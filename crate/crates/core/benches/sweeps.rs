use std::hint::black_box;

use cmtwist::sweep::{self, Execution};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn census(c: &mut Criterion) {
    let fields = sweep::cm_fields(40, 8);
    let mut g = c.benchmark_group("cm_census");
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| sweep::cm_census(black_box(&fields), mode))
        });
    }
    g.finish();
}

fn twists(c: &mut Criterion) {
    let mut g = c.benchmark_group("twist_sweep");
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| sweep::twist_sweep(black_box(50), 50, mode))
        });
    }
    g.finish();
}

fn certificates(c: &mut Criterion) {
    let primes = sweep::primes_3_mod_7(2000);
    let mut g = c.benchmark_group("certify_primes");
    g.sample_size(20);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| sweep::certify_primes(black_box(&primes), mode))
        });
    }
    g.finish();
}

fn frobenius(c: &mut Criterion) {
    let primes = sweep::primes_3_mod_7(500);
    let mut g = c.benchmark_group("frobenius_sweep");
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| sweep::frobenius_sweep(black_box(&primes), 8, mode))
        });
    }
    g.finish();
}

criterion_group!(benches, census, twists, certificates, frobenius);
criterion_main!(benches);
