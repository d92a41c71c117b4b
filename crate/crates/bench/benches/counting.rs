use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use leafcount::{caterpillar_counts, count_copies, count_copies_brute, Tree};
use leafcount_bench::{hosts, patterns};

fn recursion(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_copies");
    for (host_name, host) in hosts() {
        for (pat_name, pattern) in patterns() {
            group.bench_with_input(BenchmarkId::new(pat_name, host_name), &(&pattern, &host), |b, (p, t)| {
                b.iter(|| count_copies(p, t))
            });
        }
    }
    group.finish();
}

fn caterpillar_specialisation(c: &mut Criterion) {
    let mut group = c.benchmark_group("caterpillar_counts");
    for k in [4, 8, 16] {
        let host = Tree::even_binary(2000).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| caterpillar_counts(&host, k).unwrap())
        });
    }
    group.finish();
}

fn brute_force(c: &mut Criterion) {
    let pattern = Tree::caterpillar(2, 4).unwrap();
    let host = Tree::even_binary(16).unwrap();
    c.bench_function("count_copies_brute/16-leaves", |b| b.iter(|| count_copies_brute(&pattern, &host).unwrap()));
}

criterion_group!(benches, recursion, caterpillar_specialisation, brute_force);
criterion_main!(benches);
