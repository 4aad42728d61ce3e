use criterion::{black_box, criterion_group, criterion_main, Criterion};
use zeroblock::{blocking_number_formula, build_witness, certify_grid, upper_bound_bcc};

fn formula_sweep(c: &mut Criterion) {
    c.bench_function("blocking_number_formula/500x500_sweep", |b| {
        b.iter(|| {
            let mut acc = 0i64;
            for m in 2..=500 {
                for n in m..=500 {
                    acc += blocking_number_formula(black_box(m), black_box(n)).unwrap();
                    acc -= upper_bound_bcc(black_box(m), black_box(n)).unwrap();
                }
            }
            acc
        })
    });
}

fn witness_construction(c: &mut Criterion) {
    c.bench_function("build_witness/40x97", |b| b.iter(|| build_witness(40, 97).unwrap()));
}

fn certification(c: &mut Criterion) {
    let witness = build_witness(6, 11).unwrap();
    let white = witness.white.iter().copied().collect();
    c.bench_function("certify_grid/6x11_witness", |b| {
        b.iter(|| certify_grid(6, 11, black_box(&white)))
    });
}

criterion_group!(benches, formula_sweep, witness_construction, certification);
criterion_main!(benches);
