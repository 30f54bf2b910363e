use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hilbert_core::decomposition::{find_stanley_decomposition_with, refute_non_si_with};
use hilbert_core::enumeration::enumerate_with;
use hilbert_core::oracle::{max_growth_bruteforce_with, DEFAULT_SUBSET_BUDGET};
use hilbert_core::{EnumerationSpec, Execution, Filter, HVector};

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bruteforce(c: &mut Criterion) {
    let mut g = c.benchmark_group("max_growth_bruteforce");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::new(name, "n=4 i=3 r=4"), &exec, |b, &exec| {
            b.iter(|| {
                max_growth_bruteforce_with(black_box(4), 3, 4, DEFAULT_SUBSET_BUDGET, exec).unwrap()
            })
        });
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for filter in [Filter::Si, Filter::SymmetricNotSi, Filter::AllOSequences] {
        let spec = EnumerationSpec::new(7, 3, 12, filter).unwrap();
        for (name, exec) in STRATEGIES {
            g.bench_with_input(BenchmarkId::new(name, filter), &spec, |b, spec| {
                b.iter(|| enumerate_with(black_box(spec), exec).len())
            });
        }
    }
    g.finish();
}

fn decomposition(c: &mut Criterion) {
    let si: HVector = "1,3,6,10,12,12,10,6,3,1".parse().unwrap();
    let not_si: HVector = "1,3,6,6,5,6,6,3,1".parse().unwrap();
    let mut g = c.benchmark_group("decomposition");
    for (name, exec) in STRATEGIES {
        g.bench_with_input(
            BenchmarkId::new(name, "find 1,3,6,10,12,12,10,6,3,1"),
            &si,
            |b, h| b.iter(|| find_stanley_decomposition_with(black_box(h), 1, exec).unwrap()),
        );
        g.bench_with_input(
            BenchmarkId::new(name, "refute 1,3,6,6,5,6,6,3,1"),
            &not_si,
            |b, h| b.iter(|| refute_non_si_with(black_box(h), exec).unwrap()),
        );
    }
    g.finish();
}

criterion_group!(benches, bruteforce, enumeration, decomposition);
criterion_main!(benches);
