//! Sublattices of Z^n in canonical Hermite form, and rational lattices for duals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{self, Rationals};
use super::matrix::{Matrix, QMatrix, ZMatrix};
use super::normal_form::{hermite_form, hermite_rows};
use crate::error::{Error, Result};

/// A sublattice of Z^ambient_rank. Generators are the nonzero Hermite rows, so
/// structural equality is lattice equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient_rank: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn new<I>(ambient_rank: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let rows: Vec<Vec<BigInt>> = generators.into_iter().collect();
        let m = ZMatrix::from_rows(ambient_rank, rows)?;
        Ok(Self::from_matrix(&m))
    }

    pub fn from_matrix(m: &ZMatrix) -> Self {
        Lattice {
            ambient_rank: m.cols(),
            basis: hermite_rows(m),
        }
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Lattice {
            ambient_rank,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Self::coordinate(ambient_rank, 0..ambient_rank)
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient_rank: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let basis = idx
            .into_iter()
            .map(|i| {
                let mut v = vec![BigInt::zero(); ambient_rank];
                v[i] = BigInt::one();
                v
            })
            .collect();
        Lattice {
            ambient_rank,
            basis,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> ZMatrix {
        Matrix::from_rows(self.ambient_rank, self.basis.clone()).expect("rows have ambient length")
    }

    /// Coordinates of `v` in the Hermite basis, or `None` when `v` is not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_rank, "vector length");
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let pc = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            // Everything left of the pivot must already be cleared.
            if rest[..pc].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[pc].div_rem(&row[pc]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, b) in rest.iter_mut().zip(row).skip(pc) {
                    *x -= &q * b;
                }
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.ambient_rank == other.ambient_rank && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        Lattice::new(
            self.ambient_rank,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersection(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        if self.rank() == 0 || other.rank() == 0 {
            return Ok(Lattice::zero(self.ambient_rank));
        }
        // (a, b) with a*B1 = b*B2  <=>  (a, b) * [B1; -B2] = 0.
        let neg: Vec<Vec<BigInt>> = other
            .basis
            .iter()
            .map(|r| r.iter().map(|x| -x).collect())
            .collect();
        let stacked = self
            .basis_matrix()
            .vstack(&Matrix::from_rows(self.ambient_rank, neg)?)?;
        let kernel = kernel_rows(&stacked);
        let b1 = self.basis_matrix();
        let gens = kernel
            .into_iter()
            .map(|k| b1.left_apply(&k[..self.rank()]))
            .collect::<Result<Vec<_>>>()?;
        Lattice::new(self.ambient_rank, gens)
    }

    /// `(Q-span of self) ∩ Z^n`.
    pub fn saturation(&self) -> Lattice {
        if self.rank() == 0 {
            return self.clone();
        }
        let orth = kernel_rows(&self.basis_matrix().transpose());
        if orth.is_empty() {
            return Lattice::full(self.ambient_rank);
        }
        let n = Matrix::from_rows(self.ambient_rank, orth)
            .expect("kernel rows")
            .transpose();
        Lattice::new(self.ambient_rank, kernel_rows(&n)).expect("kernel rows")
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == *self
    }

    /// `[sup : self]` for a sublattice of the same rank.
    pub fn index_in(&self, sup: &Lattice) -> Option<BigInt> {
        if self.rank() != sup.rank() || !self.is_sublattice_of(sup) {
            return None;
        }
        let coords: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .map(|b| sup.coordinates(b).expect("contained"))
            .collect();
        let m = Matrix::from_rows(sup.rank(), coords).ok()?;
        Some(m.det().ok()?.abs())
    }

    pub fn to_rational(&self) -> RationalLattice {
        RationalLattice {
            denominator: BigInt::one(),
            numerators: self.clone(),
        }
    }

    fn check_ambient(&self, other: &Lattice) -> Result<()> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::Dimension(format!(
                "ambient ranks {} and {}",
                self.ambient_rank, other.ambient_rank
            )));
        }
        Ok(())
    }
}

/// Basis rows of the saturated left kernel `{x : x * m = 0}` (unnormalized).
fn kernel_rows(m: &ZMatrix) -> Vec<Vec<BigInt>> {
    let (h, u) = hermite_form(m);
    (0..h.rows())
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row(i).to_vec())
        .collect()
}

/// The saturated lattice `{x ∈ Z^rows : x * m = 0}`.
pub fn kernel_lattice(m: &ZMatrix) -> Lattice {
    Lattice::new(m.rows(), kernel_rows(m)).expect("kernel rows have the right length")
}

/// Whether `a + b = target`; errors when `a` or `b` is not inside `target`.
pub fn lattice_sum_equals(a: &Lattice, b: &Lattice, target: &Lattice) -> Result<bool> {
    if a.ambient_rank != target.ambient_rank || b.ambient_rank != target.ambient_rank {
        return Err(Error::Dimension("lattice_sum_equals ambient ranks differ".into()));
    }
    if !a.is_sublattice_of(target) {
        return Err(Error::NotContained("a"));
    }
    if !b.is_sublattice_of(target) {
        return Err(Error::NotContained("b"));
    }
    Ok(a.sum(b)? == *target)
}

/// `(1/denominator) * numerators`, kept canonical: the denominator is positive
/// and coprime to the content of the numerator lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalLattice {
    denominator: BigInt,
    numerators: Lattice,
}

impl RationalLattice {
    pub fn from_rational_rows(ambient_rank: usize, rows: &[Vec<BigRational>]) -> Result<Self> {
        let mut den = BigInt::one();
        for r in rows {
            if r.len() != ambient_rank {
                return Err(Error::Dimension("rational row length".into()));
            }
            for x in r {
                den = den.lcm(x.denom());
            }
        }
        let ints = rows
            .iter()
            .map(|r| r.iter().map(|x| (x * &den).to_integer()).collect())
            .collect::<Vec<Vec<BigInt>>>();
        Ok(Self::normalized(den, Lattice::new(ambient_rank, ints)?))
    }

    fn normalized(den: BigInt, lat: Lattice) -> Self {
        let mut g = den.clone();
        for row in &lat.basis {
            for x in row {
                g = g.gcd(x);
            }
        }
        if g.is_one() || g.is_zero() {
            return RationalLattice {
                denominator: den,
                numerators: lat,
            };
        }
        let basis = lat
            .basis
            .iter()
            .map(|r| r.iter().map(|x| x / &g).collect())
            .collect();
        RationalLattice {
            denominator: den / &g,
            numerators: Lattice {
                ambient_rank: lat.ambient_rank,
                basis,
            },
        }
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn numerators(&self) -> &Lattice {
        &self.numerators
    }

    pub fn ambient_rank(&self) -> usize {
        self.numerators.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.numerators.rank()
    }

    pub fn rational_basis(&self) -> Vec<Vec<BigRational>> {
        self.numerators
            .basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| BigRational::new(x.clone(), self.denominator.clone()))
                    .collect()
            })
            .collect()
    }

    /// The integral lattice, if the denominator is one.
    pub fn as_integral(&self) -> Option<&Lattice> {
        self.denominator.is_one().then_some(&self.numerators)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let scaled: Option<Vec<BigInt>> = v
            .iter()
            .map(|x| {
                let y = x * &self.denominator;
                y.is_integer().then(|| y.to_integer())
            })
            .collect();
        scaled.is_some_and(|s| self.numerators.contains(&s))
    }

    pub fn is_sublattice_of(&self, other: &RationalLattice) -> bool {
        self.rational_basis().iter().all(|b| other.contains(b))
    }

    /// `[sup : self]` for lattices of equal rank, as a rational (integral when nested).
    pub fn index_in(&self, sup: &RationalLattice) -> Option<BigRational> {
        if self.rank() != sup.rank() {
            return None;
        }
        let q = Rationals;
        let sup_m = QMatrix::from_rows(sup.ambient_rank(), sup.rational_basis()).ok()?;
        let mut coords = Vec::new();
        for b in self.rational_basis() {
            coords.push(field::solve_left(&q, &sup_m, &b)?);
        }
        let m = QMatrix::from_rows(sup.rank(), coords).ok()?;
        Some(field::det(&q, &m).abs())
    }
}

/// The dual of `m` inside the Q-span of `ambient` under `<x, y> = x * gram * y^T`:
/// `{x : <x, y> ∈ Z for all y ∈ m}`.
pub fn dual_lattice(m: &RationalLattice, gram: &QMatrix, ambient: &Lattice) -> Result<RationalLattice> {
    let n = ambient.ambient_rank();
    if gram.rows() != n || gram.cols() != n || m.ambient_rank() != n {
        return Err(Error::Dimension("gram matrix does not match ambient rank".into()));
    }
    let q = Rationals;
    let k = ambient.rank();
    let b = ambient.basis_matrix().to_rational();
    let mt = QMatrix::from_rows(n, m.rational_basis())?.transpose();
    // P[i][j] = <ambient_i, m_j>
    let p = b.mul(gram)?.mul(&mt)?;
    let ech = field::rref(&q, &p);
    if ech.rank() < k {
        return Err(Error::DegeneratePairing);
    }
    // {c : c*P ∈ Z^j} = preimage of (rowspace(P) ∩ Z^j).
    let mut den = BigInt::one();
    for i in 0..p.rows() {
        for j in 0..p.cols() {
            den = den.lcm(p[(i, j)].denom());
        }
    }
    let p_int = p.map(|x| (x * &den).to_integer());
    let row_lattice = Lattice::from_matrix(&p_int).saturation();
    let mut gens = Vec::with_capacity(row_lattice.rank());
    for w in row_lattice.basis() {
        let wq: Vec<BigRational> = w.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let c = field::solve_left(&q, &p, &wq).ok_or_else(|| {
            Error::Internal("saturated row space vector outside the pairing image".into())
        })?;
        gens.push(b.left_apply(&c)?);
    }
    RationalLattice::from_rational_rows(n, &gens)
}
