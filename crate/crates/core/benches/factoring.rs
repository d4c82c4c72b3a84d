//! Hereditary factorization and the factor-count oracle on a single-thread
//! pool versus the default pool.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qrank_core::config::Budget;
use qrank_core::hereditary::{hereditary_factorization, oracle_factor_counts};
use qrank_core::numfield::{KPoly, NumberField};
use qrank_core::poly::QPoly;

fn workloads() -> Vec<(&'static str, NumberField, KPoly)> {
    let q = NumberField::rationals();
    let gauss = NumberField::new(QPoly::from_ints(&[1, 0, 1])).unwrap();
    let poly = |k: &NumberField, c: &[i64]| k.embed_qpoly(&QPoly::from_ints(c));
    vec![
        ("x-64", q.clone(), poly(&q, &[-64, 1])),
        ("x+4", q.clone(), poly(&q, &[4, 1])),
        ("x^2-4x+1", q.clone(), poly(&q, &[1, -4, 1])),
        ("x^3-2x-5", q.clone(), poly(&q, &[-5, -2, 0, 1])),
        ("x-3 over Q(i)", gauss.clone(), poly(&gauss, &[-3, 1])),
    ]
}

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![
        ("1-thread", rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("default", rayon::ThreadPoolBuilder::new().build().unwrap()),
    ]
}

fn bench_hereditary(c: &mut Criterion) {
    let budget = Budget::default();
    let mut group = c.benchmark_group("hereditary_factorization");
    group.sample_size(10);
    for (pool_name, pool) in pools() {
        for (name, k, p) in workloads() {
            group.bench_with_input(BenchmarkId::new(pool_name, name), &(k, p), |b, (k, p)| {
                b.iter(|| pool.install(|| hereditary_factorization(k, p, &budget).unwrap()))
            });
        }
    }
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let budget = Budget::default();
    let q = NumberField::rationals();
    let p = q.embed_qpoly(&QPoly::from_ints(&[1, -4, 1]));
    let ns: Vec<u64> = (1..=16).collect();
    let mut group = c.benchmark_group("oracle_factor_counts");
    group.sample_size(10);
    for (pool_name, pool) in pools() {
        group.bench_function(BenchmarkId::new(pool_name, "x^2-4x+1, n<=16"), |b| {
            b.iter(|| pool.install(|| oracle_factor_counts(&q, &p, &ns, &budget).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_hereditary, bench_oracle);
criterion_main!(benches);
