//! Exact structure-constant algebras over Z and F_p, the Schur superalgebras
//! built from them, and checkers that certify when a lattice sandwich
//! `T ⊆ S` leaves no symmetric algebra strictly in between.
//!
//! Everything is exact: integers are `BigInt`, rationals `BigRational`, and
//! prime-field entries `u64` residues.

pub mod algebra;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod maxsym;
pub mod quasi_unit;
pub mod quiver;
pub mod schur;

pub use algebra::{AlgebraData, AlgebraDoc, Element, IdempotentDecomposition, Parity};
pub use error::{Error, Result};
pub use forms::{LinearForm, SymmetricVerdict, DEFAULT_SEED};
pub use linalg::{BaseRing, Lattice, Matrix, QMatrix, RationalLattice, ZMatrix};
pub use maxsym::{CheckOptions, CheckReport, GradedSandwich, OracleReport};
pub use quasi_unit::{Generators, PidquVerdict, QuasiUnitVerdict};
pub use schur::SchurAlgebra;
