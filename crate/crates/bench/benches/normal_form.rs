use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use maxsym_core::linalg::{hermite_form, smith_form};
use maxsym_core::ZMatrix;

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ZMatrix {
    ZMatrix::from_fn(n, n, |_, _| BigInt::from(rng.random_range(-20i64..=20)))
}

fn normal_forms(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [6, 12] {
        c.bench_function(&format!("hermite {n}x{n}"), |b| {
            b.iter_batched(|| random_matrix(&mut rng, n), |m| hermite_form(&m), BatchSize::SmallInput)
        });
        c.bench_function(&format!("smith {n}x{n}"), |b| {
            b.iter_batched(|| random_matrix(&mut rng, n), |m| smith_form(&m), BatchSize::SmallInput)
        });
    }
}

criterion_group!(benches, normal_forms);
criterion_main!(benches);
