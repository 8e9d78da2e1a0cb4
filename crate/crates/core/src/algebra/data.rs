use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{BaseRing, Matrix, ZMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Self {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }
}

/// Which canonical constructor produced an algebra; the canonical form needs it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", content = "ell")]
pub enum Provenance {
    #[serde(rename = "A")]
    AEll(usize),
    #[serde(rename = "A~")]
    ATildeEll(usize),
}

/// A coefficient vector over the basis of some algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub coeffs: Vec<BigInt>,
}

impl Element {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Element { coeffs }
    }

    pub fn zero(rank: usize) -> Self {
        Element::new(vec![BigInt::zero(); rank])
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut e = Element::zero(rank);
        e.coeffs[i] = BigInt::one();
        e
    }

    pub fn from_i64(xs: &[i64]) -> Self {
        Element::new(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }
}

impl Deref for Element {
    type Target = [BigInt];

    fn deref(&self) -> &[BigInt] {
        &self.coeffs
    }
}

impl From<Vec<BigInt>> for Element {
    fn from(v: Vec<BigInt>) -> Self {
        Element::new(v)
    }
}

/// Raw ingredients of an algebra before validation.
#[derive(Clone, Debug)]
pub struct AlgebraParts {
    pub base: BaseRing,
    pub labels: Vec<String>,
    pub degrees: Vec<u32>,
    pub parities: Vec<Parity>,
    pub unit: Vec<BigInt>,
    /// `(i, j, k, c)`: the coefficient of `b_k` in `b_i * b_j` gains `c`.
    pub structure_constants: Vec<(usize, usize, usize, BigInt)>,
    /// Defaults to the largest degree present.
    pub top_degree: Option<u32>,
    pub provenance: Option<Provenance>,
}

/// A finite-rank unital associative graded superalgebra over Z or F_p, given by
/// sparse structure constants on a homogeneous basis. Construction validates
/// associativity, the unit law, and compatibility with degree and parity.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraData {
    base: BaseRing,
    labels: Vec<String>,
    degrees: Vec<u32>,
    parities: Vec<Parity>,
    unit: Vec<BigInt>,
    // table[i * rank + j] lists (k, c) sorted by k, c nonzero.
    table: Vec<Vec<(usize, BigInt)>>,
    top_degree: u32,
    provenance: Option<Provenance>,
}

impl AlgebraData {
    pub fn new(parts: AlgebraParts) -> Result<Self> {
        let alg = Self::assemble(parts)?;
        alg.validate()?;
        Ok(alg)
    }

    /// Builds the table without the associativity sweep. Only for callers whose
    /// construction already guarantees associativity; the other checks still run.
    pub(crate) fn new_trusted(parts: AlgebraParts) -> Result<Self> {
        let alg = Self::assemble(parts)?;
        alg.validate_cheap()?;
        Ok(alg)
    }

    fn assemble(parts: AlgebraParts) -> Result<Self> {
        let AlgebraParts {
            base,
            labels,
            degrees,
            parities,
            unit,
            structure_constants,
            top_degree,
            provenance,
        } = parts;
        if matches!(base, BaseRing::Rationals) {
            return Err(Error::UnsupportedBase(
                "algebras are stored over Z or F_p; extend scalars through rational linear algebra".into(),
            ));
        }
        let rank = labels.len();
        if rank == 0 {
            return Err(Error::InvalidAlgebra("rank must be positive".into()));
        }
        if degrees.len() != rank || parities.len() != rank || unit.len() != rank {
            return Err(Error::Dimension(format!(
                "rank {rank} but {} degrees, {} parities, unit of length {}",
                degrees.len(),
                parities.len(),
                unit.len()
            )));
        }
        let mut dense: Vec<std::collections::BTreeMap<usize, BigInt>> = vec![Default::default(); rank * rank];
        for (i, j, k, c) in structure_constants {
            if i >= rank || j >= rank || k >= rank {
                return Err(Error::Dimension(format!(
                    "structure constant ({i},{j},{k}) out of range for rank {rank}"
                )));
            }
            *dense[i * rank + j].entry(k).or_default() += c;
        }
        let table = dense
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .map(|(k, c)| (k, base.normalize(c)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        let max_deg = degrees.iter().copied().max().unwrap_or(0);
        let top_degree = top_degree.unwrap_or(max_deg);
        if top_degree < max_deg {
            return Err(Error::InvalidAlgebra(format!(
                "top degree {top_degree} below a basis degree {max_deg}"
            )));
        }
        let unit = unit.into_iter().map(|c| base.normalize(c)).collect();
        Ok(AlgebraData {
            base,
            labels,
            degrees,
            parities,
            unit,
            table,
            top_degree,
            provenance,
        })
    }

    fn validate_cheap(&self) -> Result<()> {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                for (k, _) in self.mul_basis(i, j) {
                    if self.degrees[*k] != self.degrees[i] + self.degrees[j] {
                        return Err(Error::Grading(i, j, *k));
                    }
                    if self.parities[*k] != self.parities[i].add(self.parities[j]) {
                        return Err(Error::Parity(i, j, *k));
                    }
                }
            }
        }
        for i in 0..n {
            let b = Element::basis(n, i);
            if self.mul_vec(&self.unit, &b) != b.coeffs || self.mul_vec(&b, &self.unit) != b.coeffs {
                return Err(Error::UnitLaw(i));
            }
        }
        Ok(())
    }

    /// Runs every structural check, including the cubic associativity sweep.
    pub fn validate(&self) -> Result<()> {
        self.validate_cheap()?;
        let n = self.rank();
        let mut lhs = vec![BigInt::zero(); n];
        let mut rhs = vec![BigInt::zero(); n];
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_basis(i, j);
                for k in 0..n {
                    lhs.iter_mut().for_each(|x| x.set_zero());
                    rhs.iter_mut().for_each(|x| x.set_zero());
                    for (m, c) in ij {
                        for (r, d) in self.mul_basis(*m, k) {
                            lhs[*r] += c * d;
                        }
                    }
                    for (m, c) in self.mul_basis(j, k) {
                        for (r, d) in self.mul_basis(i, *m) {
                            rhs[*r] += c * d;
                        }
                    }
                    let differs = lhs
                        .iter()
                        .zip(&rhs)
                        .any(|(a, b)| !self.base.normalize(a - b).is_zero());
                    if differs {
                        return Err(Error::Associativity(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn provenance(&self) -> Option<Provenance> {
        self.provenance
    }

    pub fn unit(&self) -> Element {
        Element::new(self.unit.clone())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Ranks of the graded pieces in degrees `0..=top_degree`.
    pub fn graded_ranks(&self) -> Vec<usize> {
        let mut out = vec![0; self.top_degree as usize + 1];
        for &d in &self.degrees {
            out[d as usize] += 1;
        }
        out
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, BigInt)] {
        &self.table[i * self.rank() + j]
    }

    /// Every nonzero structure constant as `(i, j, k, c)` in lexicographic order.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &BigInt)> + '_ {
        let n = self.rank();
        self.table
            .iter()
            .enumerate()
            .flat_map(move |(ij, row)| row.iter().map(move |(k, c)| (ij / n, ij % n, *k, c)))
    }

    pub fn normalize(&self, v: Vec<BigInt>) -> Vec<BigInt> {
        match self.base {
            BaseRing::PrimeField(_) => v.into_iter().map(|x| self.base.normalize(x)).collect(),
            _ => v,
        }
    }

    pub(crate) fn mul_vec(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.rank();
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.mul_basis(i, j) {
                    out[*k] += &xy * c;
                }
            }
        }
        self.normalize(out)
    }

    pub fn multiply(&self, a: &[BigInt], b: &[BigInt]) -> Result<Element> {
        let n = self.rank();
        if a.len() != n || b.len() != n {
            return Err(Error::Dimension(format!(
                "elements of length {} and {} in an algebra of rank {n}",
                a.len(),
                b.len()
            )));
        }
        Ok(Element::new(self.mul_vec(a, b)))
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Element {
        Element::new(self.normalize(a.iter().zip(b).map(|(x, y)| x + y).collect()))
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Element {
        Element::new(self.normalize(a.iter().zip(b).map(|(x, y)| x - y).collect()))
    }

    pub fn scale(&self, c: &BigInt, a: &[BigInt]) -> Element {
        Element::new(self.normalize(a.iter().map(|x| c * x).collect()))
    }

    /// Row `i` holds `x * b_i`, so `v * L = x * v` for a row vector `v`.
    pub fn left_mult_matrix(&self, x: &[BigInt]) -> ZMatrix {
        let n = self.rank();
        let rows = (0..n)
            .map(|i| self.mul_vec(x, &Element::basis(n, i)))
            .collect();
        Matrix::from_rows(n, rows).expect("rank-length rows")
    }

    /// Row `i` holds `b_i * x`, so `v * R = v * x`.
    pub fn right_mult_matrix(&self, x: &[BigInt]) -> ZMatrix {
        let n = self.rank();
        let rows = (0..n)
            .map(|i| self.mul_vec(&Element::basis(n, i), x))
            .collect();
        Matrix::from_rows(n, rows).expect("rank-length rows")
    }

    pub fn is_homogeneous(&self, v: &[BigInt]) -> Option<(u32, Parity)> {
        let mut it = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i);
        let first = it.next()?;
        let key = (self.degrees[first], self.parities[first]);
        it.all(|i| (self.degrees[i], self.parities[i]) == key).then_some(key)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (i + 1..n).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }

    pub(crate) fn parts(&self) -> AlgebraParts {
        AlgebraParts {
            base: self.base,
            labels: self.labels.clone(),
            degrees: self.degrees.clone(),
            parities: self.parities.clone(),
            unit: self.unit.clone(),
            structure_constants: self
                .structure_constants()
                .map(|(i, j, k, c)| (i, j, k, c.clone()))
                .collect(),
            top_degree: Some(self.top_degree),
            provenance: self.provenance,
        }
    }
}

impl fmt::Debug for AlgebraData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraData")
            .field("base", &self.base)
            .field("rank", &self.rank())
            .field("graded_ranks", &self.graded_ranks())
            .field("provenance", &self.provenance)
            .finish()
    }
}
