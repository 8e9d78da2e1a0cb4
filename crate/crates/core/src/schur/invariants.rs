use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::tensor::{act_on_basis, matrix_superalgebra, signed_tensor_power, symmetric_group_action, Permutation, TensorPower};
use crate::algebra::{AlgebraData, Element, IdempotentDecomposition};
use crate::error::{Error, Result};
use crate::linalg::{kernel_lattice, BaseRing, Lattice, Matrix, ZMatrix};

/// A composition of `d` into exactly `n` nonnegative parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>, n: usize, d: usize) -> Result<Self> {
        if parts.len() != n || parts.iter().sum::<usize>() != d {
            return Err(Error::Dimension(format!("{parts:?} is not a composition of {d} into {n} parts")));
        }
        Ok(Composition(parts))
    }

    /// `(1, ..., 1, 0, ..., 0)` with `d` ones; requires `d <= n`.
    pub fn omega(n: usize, d: usize) -> Result<Self> {
        if d > n {
            return Err(Error::Dimension(format!("omega needs d <= n, got d = {d}, n = {n}")));
        }
        Ok(Composition((0..n).map(|i| usize::from(i < d)).collect()))
    }

    /// Every composition of `d` into `n` parts, lexicographically descending.
    pub fn all(n: usize, d: usize) -> Vec<Composition> {
        fn go(n: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(Composition(prefix.clone()));
                prefix.pop();
                return;
            }
            for first in (0..=d).rev() {
                prefix.push(first);
                go(n, d - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(n, d, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn of_indices(idx: &[usize], n: usize) -> Self {
        let mut parts = vec![0; n];
        for &i in idx {
            parts[i] += 1;
        }
        Composition(parts)
    }
}

impl std::fmt::Display for Composition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `S^A(n, d)` together with everything it was built from.
#[derive(Clone, Debug)]
pub struct SchurAlgebra {
    pub coefficient_algebra: AlgebraData,
    pub n: usize,
    pub d: usize,
    pub matrix_algebra: AlgebraData,
    pub tensor: TensorPower,
    /// Invariant lattice in tensor coordinates; its Hermite rows are the basis.
    pub invariant_lattice: Lattice,
    pub invariant: AlgebraData,
}

impl SchurAlgebra {
    /// Rows are the invariant basis in tensor coordinates.
    pub fn embedding(&self) -> ZMatrix {
        self.invariant_lattice.basis_matrix()
    }

    pub fn to_invariant_coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        self.invariant_lattice.coordinates(v)
    }

    /// Indices `(r, s, b)` of a matrix-algebra basis element.
    pub fn decode_matrix_index(&self, m: usize) -> (usize, usize, usize) {
        let ra = self.coefficient_algebra.rank();
        let b = m % ra;
        let rs = m / ra;
        (rs / self.n, rs % self.n, b)
    }

    pub fn weight_idempotents(&self) -> Result<Vec<(Composition, Element)>> {
        weight_idempotents(self)
    }

    pub fn weight_decomposition(&self) -> Result<IdempotentDecomposition> {
        let parts = self.weight_idempotents()?.into_iter().map(|(_, e)| e).collect();
        IdempotentDecomposition::new(&self.invariant, parts)
    }

    pub fn xi_omega(&self) -> Result<Element> {
        let omega = Composition::omega(self.n, self.d)?;
        self.weight_idempotents()?
            .into_iter()
            .find(|(c, _)| *c == omega)
            .map(|(_, e)| e)
            .ok_or_else(|| Error::Internal("omega missing from the weight list".into()))
    }
}

/// Saturated fixed lattice of the signed action, from the adjacent transpositions.
pub fn invariant_lattice(t: &TensorPower) -> Result<Lattice> {
    let n = t.rank();
    if t.d() == 1 {
        return Ok(Lattice::full(n));
    }
    let blocks: Vec<ZMatrix> = (0..t.d() - 1)
        .into_par_iter()
        .map(|i| {
            let a = symmetric_group_action(t, &Permutation::adjacent(t.d(), i))?;
            // x (A^T - I) = 0  <=>  A x^T = x^T.
            let mut m = a.transpose();
            for k in 0..n {
                m[(k, k)] -= 1;
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    let mut stacked = blocks[0].clone();
    for b in &blocks[1..] {
        stacked = stacked.hstack(b)?;
    }
    Ok(kernel_lattice(&stacked))
}

/// Orbit sums of tensor basis elements whose stabilizer acts without sign.
pub fn orbit_sums(t: &TensorPower) -> Vec<Vec<BigInt>> {
    let perms = Permutation::all(t.d());
    let mut seen = vec![false; t.rank()];
    let mut out = Vec::new();
    for x in 0..t.rank() {
        if seen[x] {
            continue;
        }
        let mut sum: BTreeMap<usize, bool> = BTreeMap::new();
        let mut vanishes = false;
        for sigma in &perms {
            let (y, neg) = act_on_basis(t, sigma, x);
            seen[y] = true;
            match sum.get(&y) {
                Some(&prev) if prev != neg => vanishes = true,
                Some(_) => {}
                None => {
                    sum.insert(y, neg);
                }
            }
        }
        if vanishes {
            continue;
        }
        let mut v = vec![BigInt::zero(); t.rank()];
        for (y, neg) in sum {
            v[y] = if neg { -BigInt::one() } else { BigInt::one() };
        }
        out.push(v);
    }
    out
}

/// The invariant lattice assembled from orbit sums; agrees with `invariant_lattice`.
pub fn orbit_sum_lattice(t: &TensorPower) -> Result<Lattice> {
    Lattice::new(t.rank(), orbit_sums(t))
}

/// Builds `S^A(n, d)` over Z.
pub fn invariant_algebra(t: &TensorPower) -> Result<(AlgebraData, Lattice)> {
    if t.algebra().base() != BaseRing::Integers {
        return Err(Error::UnsupportedBase(format!(
            "invariants are computed over Z, got {}",
            t.algebra().base()
        )));
    }
    let lattice = invariant_lattice(t)?;
    let basis = lattice.basis().to_vec();
    let sub = t.algebra().sub_algebra(&basis, &t.algebra().unit())?;
    let mut parts = sub.parts();
    parts.top_degree = Some(t.algebra().top_degree());
    parts.labels = basis
        .iter()
        .map(|row| {
            let lead = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            format!("sym[{}]", t.algebra().labels()[lead])
        })
        .collect();
    Ok((AlgebraData::new(parts)?, lattice))
}

pub fn schur_algebra(a: &AlgebraData, n: usize, d: usize, cap: u128) -> Result<SchurAlgebra> {
    let m = matrix_superalgebra(a, n)?;
    let tensor = signed_tensor_power(&m, d, cap)?;
    let (invariant, invariant_lattice) = invariant_algebra(&tensor)?;
    Ok(SchurAlgebra {
        coefficient_algebra: a.clone(),
        n,
        d,
        matrix_algebra: m,
        tensor,
        invariant_lattice,
        invariant,
    })
}

/// `ξ_λ = Σ_{i of weight λ} E^{1}_{i_1 i_1} ⊗ ... ⊗ E^{1}_{i_d i_d}`, in invariant coordinates.
pub fn weight_idempotents(s: &SchurAlgebra) -> Result<Vec<(Composition, Element)>> {
    let (n, d) = (s.n, s.d);
    let a_unit = s.coefficient_algebra.unit();
    let ra = s.coefficient_algebra.rank();
    let rm = s.matrix_algebra.rank();
    let mut by_weight: BTreeMap<Composition, Vec<BigInt>> = BTreeMap::new();
    let total_idx = n.pow(d as u32);
    for code in 0..total_idx {
        let mut idx = vec![0; d];
        let mut c = code;
        for slot in (0..d).rev() {
            idx[slot] = c % n;
            c /= n;
        }
        let lambda = Composition::of_indices(&idx, n);
        let v = by_weight
            .entry(lambda)
            .or_insert_with(|| vec![BigInt::zero(); s.tensor.rank()]);
        // Expand ⊗_slot Σ_b unit_b E^b_{i,i}.
        let mut terms: Vec<(usize, BigInt)> = vec![(0, BigInt::one())];
        for &i in &idx {
            let mut next = Vec::new();
            for (acc, coef) in &terms {
                for (b, u) in a_unit.iter().enumerate() {
                    if !u.is_zero() {
                        next.push((acc * rm + (i * n + i) * ra + b, coef * u));
                    }
                }
            }
            terms = next;
        }
        for (k, c) in terms {
            v[k] += c;
        }
    }
    let mut out = Vec::new();
    for lambda in Composition::all(n, d) {
        let v = by_weight
            .remove(&lambda)
            .ok_or_else(|| Error::Internal(format!("no multi-index of weight {lambda}")))?;
        let coords = s
            .to_invariant_coords(&v)
            .ok_or_else(|| Error::Internal(format!("ξ_{lambda} is not invariant")))?;
        out.push((lambda, Element::new(coords)));
    }
    Ok(out)
}

/// Span, in invariant coordinates, of the degree-`degree` orbit sums of
/// `E^b_{r,s}` whose row indices `r_1, ..., r_d` are pairwise distinct.
pub fn distinct_row_sublattice(s: &SchurAlgebra, degree: u32) -> Result<Lattice> {
    if s.d > s.n {
        return Err(Error::Dimension(format!("needs d <= n, got d = {}, n = {}", s.d, s.n)));
    }
    let t = &s.tensor;
    let mut gens = Vec::new();
    for v in orbit_sums(t) {
        let lead = v.iter().position(|x| !x.is_zero()).expect("nonzero orbit sum");
        if t.algebra().degree(lead) != degree {
            continue;
        }
        let rows: Vec<usize> = t
            .decode(lead)
            .into_iter()
            .map(|m| s.decode_matrix_index(m).0)
            .collect();
        let mut sorted = rows.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != rows.len() {
            continue;
        }
        gens.push(
            s.to_invariant_coords(&v)
                .ok_or_else(|| Error::Internal("orbit sum outside the invariant lattice".into()))?,
        );
    }
    Lattice::new(s.invariant.rank(), gens)
}

/// Whether `σ` fixes `v`, given in tensor coordinates.
pub fn fixes(t: &TensorPower, sigma: &Permutation, v: &[BigInt]) -> Result<bool> {
    let a = symmetric_group_action(t, sigma)?;
    let col = Matrix::from_rows(1, v.iter().map(|x| vec![x.clone()]).collect())?;
    Ok(a.mul(&col)?.to_rows().into_iter().map(|r| r[0].clone()).collect::<Vec<_>>() == v)
}
