//! Benchmarks live under `benches/`. This crate only hosts shared inputs.

use maxsym_core::algebra::builders::ground_ring;
use maxsym_core::quiver::canonical_a_ell;
use maxsym_core::schur::{schur_algebra, SchurAlgebra, DEFAULT_TENSOR_CAP};
use maxsym_core::{AlgebraData, BaseRing};

/// `S^{A_1}(2, 2)`, the desk-scale super Schur algebra every bench reuses.
pub fn schur_a1_2_2() -> SchurAlgebra {
    let a1 = canonical_a_ell(1, BaseRing::Integers).expect("A_1 builds");
    schur_algebra(&a1, 2, 2, DEFAULT_TENSOR_CAP).expect("S(2,2) builds")
}

/// The classical `S(n, d)` over Z.
pub fn classical_schur(n: usize, d: usize) -> SchurAlgebra {
    let z: AlgebraData = ground_ring(BaseRing::Integers).expect("Z builds");
    schur_algebra(&z, n, d, DEFAULT_TENSOR_CAP).expect("classical Schur algebra builds")
}
