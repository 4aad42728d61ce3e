use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use zeroblock::{blocking_number_formula, enumerate_min_blocking_sets, min_blocking_grid, Graph, SearchBudget};

fn exact_search(c: &mut Criterion) {
    let budget = SearchBudget::default();
    let mut group = c.benchmark_group("min_blocking_grid");
    group.sample_size(20);
    for (m, n) in [(3usize, 5usize), (4, 5), (3, 7)] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{m}x{n}")), &(m, n), |b, &(m, n)| {
            b.iter(|| min_blocking_grid(m, n, &budget).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let budget = SearchBudget::default();
    let graph = Graph::grid(2, 10).unwrap();
    let target = blocking_number_formula(2, 10).unwrap() as usize;
    c.bench_function("enumerate_min_blocking_sets/2x10", |b| {
        b.iter(|| enumerate_min_blocking_sets(&graph, target, 500, &budget).unwrap())
    });
}

criterion_group!(benches, exact_search, enumeration);
criterion_main!(benches);
