//! Gaussian elimination over exact fields (Q and F_p).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::ring::to_residue;

pub trait Field {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
}

/// Z/p for a machine-word prime p; elements are residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn from_int(&self, x: &BigInt) -> u64 {
        to_residue(x, self.p)
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &a);
            }
            a = self.mul(&a, &a);
            e >>= 1;
        }
        acc
    }

    pub fn lift_matrix(&self, m: &Matrix<BigInt>) -> Matrix<u64> {
        m.map(|x| self.from_int(x))
    }
}

impl Field for Fp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
}

/// Reduced row echelon form together with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl<E: Clone> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Echelon<F::Elem> {
    let mut a = m.to_rows();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| !f.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, piv);
        let inv = f.inv(&a[r][c]);
        for x in a[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..a.len() {
            if i != r && !f.is_zero(&a[i][c]) {
                let factor = a[i][c].clone();
                for j in c..cols {
                    let v = f.mul(&factor, &a[r][j]);
                    a[i][j] = f.sub(&a[i][j], &v);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    Echelon {
        rows: a,
        pivots,
        cols,
    }
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    rref(f, m).rank()
}

pub fn det<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.to_rows();
    let mut acc = f.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !f.is_zero(&a[i][c])) else {
            return f.zero();
        };
        if piv != c {
            a.swap(piv, c);
            acc = f.neg(&acc);
        }
        acc = f.mul(&acc, &a[c][c]);
        let inv = f.inv(&a[c][c]);
        for i in c + 1..n {
            if f.is_zero(&a[i][c]) {
                continue;
            }
            let factor = f.mul(&a[i][c], &inv);
            for j in c..n {
                let v = f.mul(&factor, &a[c][j]);
                a[i][j] = f.sub(&a[i][j], &v);
            }
        }
    }
    acc
}

pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            f.one()
        } else {
            f.zero()
        }
    });
    let e = rref(f, &aug);
    if e.rank() < n || e.pivots[n - 1] >= n {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| e.rows[i][n + j].clone()))
}

/// Basis of `{x : x * m = 0}`.
pub fn left_nullspace<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let t = m.transpose();
    let e = rref(f, &t);
    let n = m.rows();
    let free: Vec<usize> = (0..n).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![f.zero(); n];
            x[fc] = f.one();
            for (row, &pc) in e.rows.iter().zip(&e.pivots) {
                x[pc] = f.neg(&row[fc]);
            }
            x
        })
        .collect()
}

/// Some `x` with `x * m = v`, if one exists.
pub fn solve_left<F: Field>(f: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(v.len(), m.cols());
    let n = m.rows();
    // Work on [m^T | v^T] so that the system is m^T x^T = v^T.
    let aug = Matrix::from_fn(m.cols(), n + 1, |i, j| {
        if j < n {
            m[(j, i)].clone()
        } else {
            v[i].clone()
        }
    });
    let e = rref(f, &aug);
    if e.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![f.zero(); n];
    for (row, &pc) in e.rows.iter().zip(&e.pivots) {
        x[pc] = row[n].clone();
    }
    Some(x)
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols(), b.rows());
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        let mut acc = f.zero();
        for k in 0..a.cols() {
            if !f.is_zero(&a[(i, k)]) {
                acc = f.add(&acc, &f.mul(&a[(i, k)], &b[(k, j)]));
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp_mat(p: u64, rows: &[&[i64]]) -> Matrix<u64> {
        let f = Fp::new(p);
        let cols = rows[0].len();
        Matrix::from_fn(rows.len(), cols, |i, j| f.from_i64(rows[i][j]))
    }

    #[test]
    fn fp_inverse_and_det() {
        let f = Fp::new(7);
        let m = fp_mat(7, &[&[1, 2], &[3, 4]]);
        assert_eq!(det(&f, &m), f.from_i64(-2));
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &inv), Matrix::from_fn(2, 2, |i, j| u64::from(i == j)));
        let sing = fp_mat(5, &[&[1, 2], &[2, 4]]);
        assert!(inverse(&Fp::new(5), &sing).is_none());
    }

    #[test]
    fn nullspace_and_solve_over_q() {
        let q = Rationals;
        let m = Matrix::from_fn(3, 2, |i, j| BigRational::from_integer(BigInt::from([[1, 2], [2, 4], [0, 1]][i][j])));
        let ns = left_nullspace(&q, &m);
        assert_eq!(ns.len(), 1);
        let prod = m.left_apply(&ns[0]).unwrap();
        assert!(prod.iter().all(Zero::is_zero));
        let target = vec![BigRational::from_integer(3.into()), BigRational::from_integer(7.into())];
        let x = solve_left(&q, &m, &target).unwrap();
        assert_eq!(m.left_apply(&x).unwrap(), target);
    }

    #[test]
    fn inconsistent_system_has_no_solution() {
        let f = Fp::new(3);
        let m = fp_mat(3, &[&[1, 1], &[2, 2]]);
        assert!(solve_left(&f, &m, &[1, 0]).is_none());
        assert_eq!(solve_left(&f, &m, &[1, 1]).map(|x| mat_mul(&f, &Matrix::from_rows(2, vec![x]).unwrap(), &m).row(0).to_vec()), Some(vec![1, 1]));
    }
}
