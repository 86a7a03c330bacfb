use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tau_lab::hierarchy::hirota_residual;
use tau_lab::hurwitz::{hurwitz_bruteforce, hurwitz_frobenius, HurwitzQuery};
use tau_lab::pic::bracket;
use tau_lab::symmetric::CharacterTable;
use tau_lab_bench::{lp2h, partition_pairs};

fn characters(c: &mut Criterion) {
    let mut group = c.benchmark_group("characters");
    for d in [6, 8, 10] {
        let pairs = partition_pairs(d);
        // A fresh table each iteration, otherwise we only time the memo lookup.
        group.bench_with_input(BenchmarkId::from_parameter(d), &pairs, |b, pairs| {
            b.iter(|| {
                let t = CharacterTable::new();
                for (mu, lambda) in pairs {
                    black_box(t.character(mu, lambda).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn hurwitz(c: &mut Criterion) {
    let mut group = c.benchmark_group("hurwitz");
    let q = HurwitzQuery::one_part(1, &[2, 2]).unwrap();
    group.bench_function("bruteforce g1 (2,2)", |b| b.iter(|| hurwitz_bruteforce(black_box(&q)).unwrap()));
    group.bench_function("frobenius g1 (2,2)", |b| b.iter(|| hurwitz_frobenius(black_box(&q)).unwrap()));
    let big = HurwitzQuery::simple(2, &[4, 3, 3]).unwrap();
    group.bench_function("frobenius simple g2 (4,3,3)", |b| b.iter(|| hurwitz_frobenius(black_box(&big)).unwrap()));
    group.finish();
}

// The Hurwitz values behind a bracket are memoized; this times the alternating sum.
fn brackets(c: &mut Criterion) {
    c.bench_function("bracket tau_2^5", |b| b.iter(|| bracket(black_box(&[2, 2, 2, 2, 2])).unwrap()));
}

fn series_ops(c: &mut Criterion) {
    let tau = lp2h(9, 5);
    let mut group = c.benchmark_group("series");
    group.bench_function("square", |b| b.iter(|| black_box(&tau) * black_box(&tau)));
    group.bench_function("exp", |b| b.iter(|| black_box(&tau).exp().unwrap()));
    group.bench_function("hirota (2,3)", |b| b.iter(|| hirota_residual(2, 3, black_box(&tau)).unwrap()));
    group.finish();
}

criterion_group!(benches, characters, hurwitz, brackets, series_ops);
criterion_main!(benches);
