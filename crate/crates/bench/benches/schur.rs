use criterion::{criterion_group, criterion_main, Criterion};

use maxsym_bench::{classical_schur, schur_a1_2_2};

fn schur(c: &mut Criterion) {
    let mut g = c.benchmark_group("schur");
    g.sample_size(10);
    g.bench_function("S(2,2) over Z", |b| b.iter(|| classical_schur(2, 2)));
    g.bench_function("S(2,3) over Z", |b| b.iter(|| classical_schur(2, 3)));
    g.bench_function("S^A1(2,2)", |b| b.iter(schur_a1_2_2));
    g.finish();
}

criterion_group!(benches, schur);
criterion_main!(benches);
