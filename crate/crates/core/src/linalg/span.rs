//! Submodules of R^n for R = Z (saturated lattices) or F_p (subspaces), behind one type.

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::{self, Fp};
use super::lattice::Lattice;
use super::matrix::Matrix;
use super::ring::BaseRing;
use crate::error::{Error, Result};

/// A saturated submodule of `base^ambient`. Over F_p the basis is in reduced
/// echelon form with residues in `[0, p)`; over Z it is the Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    base: BaseRing,
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Span {
    pub fn new(base: BaseRing, ambient: usize, generators: Vec<Vec<BigInt>>) -> Result<Self> {
        match base {
            BaseRing::Integers => {
                let lat = Lattice::new(ambient, generators)?.saturation();
                Ok(Span {
                    base,
                    ambient,
                    basis: lat.basis().to_vec(),
                })
            }
            BaseRing::PrimeField(p) => {
                let f = Fp::new(p);
                let m = Matrix::from_rows(ambient, generators)?;
                let e = field::rref(&f, &f.lift_matrix(&m));
                let basis = e
                    .rows
                    .into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect();
                Ok(Span {
                    base,
                    ambient,
                    basis,
                })
            }
            BaseRing::Rationals => Err(Error::UnsupportedBase("spans over Q".into())),
        }
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `v` in `basis()`, or `None` when `v` lies outside.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        match self.base {
            BaseRing::PrimeField(p) => {
                let f = Fp::new(p);
                let m = f.lift_matrix(&Matrix::from_rows(self.ambient, self.basis.clone()).ok()?);
                let target: Vec<u64> = v.iter().map(|x| f.from_int(x)).collect();
                if self.basis.is_empty() {
                    return target.iter().all(|&x| x == 0).then(Vec::new);
                }
                field::solve_left(&f, &m, &target).map(|x| x.into_iter().map(BigInt::from).collect())
            }
            _ => {
                if self.basis.is_empty() {
                    return v.iter().all(Zero::is_zero).then(Vec::new);
                }
                Lattice::new(self.ambient, self.basis.clone()).ok()?.coordinates(v)
            }
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// The lattice view, for spans over Z.
    pub fn as_lattice(&self) -> Option<Lattice> {
        (self.base == BaseRing::Integers)
            .then(|| Lattice::new(self.ambient, self.basis.clone()).expect("basis rows"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn integer_spans_are_saturated() {
        let s = Span::new(BaseRing::Integers, 2, vec![v(&[2, 2])]).unwrap();
        assert_eq!(s.basis(), &[v(&[1, 1])]);
        assert!(s.contains(&v(&[3, 3])));
        assert!(!s.contains(&v(&[1, 0])));
    }

    #[test]
    fn prime_field_spans_reduce() {
        let s = Span::new(BaseRing::PrimeField(3), 2, vec![v(&[2, 4]), v(&[1, 2])]).unwrap();
        assert_eq!(s.rank(), 1);
        assert_eq!(s.coordinates(&v(&[2, 1])), Some(v(&[2])));
        assert!(!s.contains(&v(&[0, 1])));
    }
}
