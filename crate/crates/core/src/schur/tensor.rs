use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{AlgebraData, AlgebraParts, Parity};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, ZMatrix};

pub const DEFAULT_TENSOR_CAP: u128 = 1_000_000;

// Full associativity sweeps are cubic in the rank; above this, only the
// factor is swept and the tensor table is trusted by construction.
const FULL_VALIDATION_RANK: usize = 256;

/// `M_n(A)`: basis `E^b_{r,s}` at index `(r * n + s) * rank(A) + b`, matrix units even.
pub fn matrix_superalgebra(a: &AlgebraData, n: usize) -> Result<AlgebraData> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("n must be positive".into()));
    }
    let ra = a.rank();
    let idx = |r: usize, s: usize, b: usize| (r * n + s) * ra + b;
    let mut sc = Vec::new();
    for r in 0..n {
        for s in 0..n {
            for t in 0..n {
                for (i, j, k, c) in a.structure_constants() {
                    sc.push((idx(r, s, i), idx(s, t, j), idx(r, t, k), c.clone()));
                }
            }
        }
    }
    let mut unit = vec![BigInt::zero(); n * n * ra];
    let ua = a.unit();
    for r in 0..n {
        for (b, c) in ua.iter().enumerate() {
            unit[idx(r, r, b)] = c.clone();
        }
    }
    let mut labels = Vec::with_capacity(n * n * ra);
    let mut degrees = Vec::with_capacity(n * n * ra);
    let mut parities = Vec::with_capacity(n * n * ra);
    for r in 0..n {
        for s in 0..n {
            for b in 0..ra {
                labels.push(format!("E{},{}[{}]", r + 1, s + 1, a.labels()[b]));
                degrees.push(a.degree(b));
                parities.push(a.parity(b));
            }
        }
    }
    AlgebraData::new(AlgebraParts {
        base: a.base(),
        labels,
        degrees,
        parities,
        unit,
        structure_constants: sc,
        top_degree: Some(a.top_degree()),
        provenance: None,
    })
}

/// `m^{⊗d}` with the Koszul sign rule, basis tuples in lexicographic order.
#[derive(Clone, Debug)]
pub struct TensorPower {
    factor: AlgebraData,
    d: usize,
    algebra: AlgebraData,
}

impl TensorPower {
    pub fn factor(&self) -> &AlgebraData {
        &self.factor
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn algebra(&self) -> &AlgebraData {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    /// Factor basis indices of tensor basis element `i`.
    pub fn decode(&self, mut i: usize) -> Vec<usize> {
        let r = self.factor.rank();
        let mut out = vec![0; self.d];
        for slot in (0..self.d).rev() {
            out[slot] = i % r;
            i /= r;
        }
        out
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        let r = self.factor.rank();
        digits.iter().fold(0, |acc, &x| acc * r + x)
    }
}

fn tensor_rank(r: usize, d: usize, cap: u128) -> Result<usize> {
    let mut total: u128 = 1;
    for _ in 0..d {
        total = total.saturating_mul(r as u128);
    }
    if total > cap {
        return Err(Error::CapExceeded(total, cap));
    }
    Ok(total as usize)
}

pub fn signed_tensor_power(m: &AlgebraData, d: usize, cap: u128) -> Result<TensorPower> {
    if d == 0 {
        return Err(Error::InvalidAlgebra("d must be positive".into()));
    }
    let r = m.rank();
    let total = tensor_rank(r, d, cap)?;
    let shell = TensorPower {
        factor: m.clone(),
        d,
        algebra: m.clone(),
    };
    let odd = |b: usize| m.parity(b).is_odd();
    let mut sc = Vec::new();
    for x in 0..total {
        let xs = shell.decode(x);
        for y in 0..total {
            let ys = shell.decode(y);
            // Sign from moving y_j past x_i for every i > j.
            let mut flips = 0usize;
            for i in 0..d {
                if !odd(xs[i]) {
                    continue;
                }
                flips += ys[..i].iter().filter(|&&b| odd(b)).count();
            }
            // Expand the product of sparse factor products.
            let mut terms: Vec<(usize, BigInt)> = vec![(0, if flips % 2 == 0 { BigInt::one() } else { -BigInt::one() })];
            for slot in 0..d {
                let prod = m.mul_basis(xs[slot], ys[slot]);
                if prod.is_empty() {
                    terms.clear();
                    break;
                }
                let mut next = Vec::with_capacity(terms.len() * prod.len());
                for (acc, c) in &terms {
                    for (k, e) in prod {
                        next.push((acc * r + k, c * e));
                    }
                }
                terms = next;
            }
            for (k, c) in terms {
                sc.push((x, y, k, c));
            }
        }
    }
    let mut unit = vec![BigInt::zero(); total];
    let mu = m.unit();
    for (k, slot) in unit.iter_mut().enumerate() {
        let digits = shell.decode(k);
        let mut c = BigInt::one();
        for &b in &digits {
            c *= &mu[b];
            if c.is_zero() {
                break;
            }
        }
        *slot = c;
    }
    let mut labels = Vec::with_capacity(total);
    let mut degrees = Vec::with_capacity(total);
    let mut parities = Vec::with_capacity(total);
    for k in 0..total {
        let digits = shell.decode(k);
        labels.push(
            digits
                .iter()
                .map(|&b| m.labels()[b].as_str())
                .collect::<Vec<_>>()
                .join("⊗"),
        );
        degrees.push(digits.iter().map(|&b| m.degree(b)).sum());
        parities.push(
            digits
                .iter()
                .fold(Parity::Even, |p, &b| p.add(m.parity(b))),
        );
    }
    let parts = AlgebraParts {
        base: m.base(),
        labels,
        degrees,
        parities,
        unit,
        structure_constants: sc,
        top_degree: Some(m.top_degree() * d as u32),
        provenance: None,
    };
    let algebra = if total <= FULL_VALIDATION_RANK {
        AlgebraData::new(parts)?
    } else {
        AlgebraData::new_trusted(parts)?
    };
    Ok(TensorPower {
        factor: m.clone(),
        d,
        algebra,
    })
}

/// A permutation of `0..d`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Dimension(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(d: usize) -> Self {
        Permutation((0..d).collect())
    }

    /// Swaps `i` and `i + 1`.
    pub fn adjacent(d: usize, i: usize) -> Self {
        let mut v: Vec<usize> = (0..d).collect();
        v.swap(i, i + 1);
        Permutation(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    /// All `d!` permutations in lexicographic order of image lists.
    pub fn all(d: usize) -> Vec<Permutation> {
        use itertools::Itertools;
        (0..d).permutations(d).map(Permutation).collect()
    }
}

/// Image of tensor basis element `x` under `σ`: slot `i` moves to slot `σ(i)`,
/// with a sign for every crossing pair of odd factors.
pub fn act_on_basis(t: &TensorPower, sigma: &Permutation, x: usize) -> (usize, bool) {
    let xs = t.decode(x);
    let d = t.d();
    let mut out = vec![0; d];
    for (i, &b) in xs.iter().enumerate() {
        out[sigma.apply(i)] = b;
    }
    let mut negative = false;
    for i in 0..d {
        for j in i + 1..d {
            if sigma.apply(i) > sigma.apply(j)
                && t.factor().parity(xs[i]).is_odd()
                && t.factor().parity(xs[j]).is_odd()
            {
                negative = !negative;
            }
        }
    }
    (t.encode(&out), negative)
}

/// Action matrix in the column convention: column `x` is the image of basis
/// element `x`, so `act(στ) = act(σ) act(τ)`.
pub fn symmetric_group_action(t: &TensorPower, sigma: &Permutation) -> Result<ZMatrix> {
    if sigma.len() != t.d() {
        return Err(Error::Dimension(format!(
            "permutation of {} letters on a {}-fold tensor power",
            sigma.len(),
            t.d()
        )));
    }
    let n = t.rank();
    let mut m = Matrix::zeros(n, n);
    for x in 0..n {
        let (y, neg) = act_on_basis(t, sigma, x);
        m[(y, x)] = if neg { -BigInt::one() } else { BigInt::one() };
    }
    Ok(m)
}
