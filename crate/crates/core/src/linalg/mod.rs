//! Exact linear algebra over Z, Q and F_p.

pub mod field;
pub mod lattice;
pub mod matrix;
pub mod normal_form;
pub mod ring;
pub mod span;

pub use field::{Field, Fp, Rationals};
pub use lattice::{dual_lattice, kernel_lattice, lattice_sum_equals, Lattice, RationalLattice};
pub use matrix::{Matrix, QMatrix, ZMatrix};
pub use normal_form::{elementary_divisors, hermite_form, is_hermite, smith_form};
pub use ring::{is_prime, prime_divisors, valuation, BaseRing};
pub use span::Span;
