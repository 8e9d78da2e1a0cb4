use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::data::{AlgebraData, AlgebraParts, Element, Parity};
use crate::error::{Error, Result};
use crate::linalg::field::{self, Field, Fp};
use crate::linalg::{kernel_lattice, BaseRing, Lattice, Matrix, Span, ZMatrix};

/// Left kernel `{x : x * m = 0}` over the algebra's base ring; saturated over Z.
pub(crate) fn left_kernel(base: BaseRing, m: &ZMatrix) -> Vec<Vec<BigInt>> {
    match base {
        BaseRing::PrimeField(p) => {
            let f = Fp::new(p);
            let rows = field::left_nullspace(&f, &f.lift_matrix(m));
            let span = Span::new(
                base,
                m.rows(),
                rows.into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect(),
            )
            .expect("rows of the right length");
            span.basis().to_vec()
        }
        _ => kernel_lattice(m).basis().to_vec(),
    }
}

impl AlgebraData {
    /// Basis of the center; saturated over Z.
    pub fn center_basis(&self) -> Vec<Element> {
        let n = self.rank();
        // Row m, column (i, k): coefficient of b_k in [b_m, b_i].
        let m = Matrix::from_fn(n, n * n, |row, col| {
            let (i, k) = (col / n, col % n);
            let lookup = |a: usize, b: usize| {
                self.mul_basis(a, b)
                    .iter()
                    .find(|(kk, _)| *kk == k)
                    .map_or_else(BigInt::zero, |(_, c)| c.clone())
            };
            lookup(row, i) - lookup(i, row)
        });
        left_kernel(self.base(), &m)
            .into_iter()
            .map(Element::new)
            .collect()
    }

    pub fn is_central(&self, z: &[BigInt]) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            let b = Element::basis(n, i);
            self.mul_vec(z, &b) == self.mul_vec(&b, z)
        })
    }

    pub fn is_idempotent(&self, e: &[BigInt]) -> bool {
        self.mul_vec(e, e) == self.normalize(e.to_vec())
    }

    /// The saturated span `e * A * f`.
    pub fn peirce_corner(&self, e: &[BigInt], f: &[BigInt]) -> Result<Span> {
        if e.len() != self.rank() || f.len() != self.rank() {
            return Err(Error::Dimension("idempotent length".into()));
        }
        if !self.is_idempotent(e) || !self.is_idempotent(f) {
            return Err(Error::NotIdempotent);
        }
        let n = self.rank();
        let gens = (0..n)
            .map(|i| self.mul_vec(&self.mul_vec(e, &Element::basis(n, i)), f))
            .collect();
        Span::new(self.base(), n, gens)
    }

    /// `e * A * e` as a unital algebra with unit `e`, together with its basis in
    /// ambient coordinates.
    pub fn corner_algebra(&self, e: &[BigInt]) -> Result<(AlgebraData, Vec<Vec<BigInt>>)> {
        let corner = self.peirce_corner(e, e)?;
        let basis = corner.basis().to_vec();
        let alg = self.sub_algebra(&basis, e)?;
        Ok((alg, basis))
    }

    /// Structure constants of the subalgebra spanned by `basis` (rows in ambient
    /// coordinates), with unit `unit`. Grading is inherited when every basis
    /// vector is homogeneous; otherwise everything sits in degree 0, even.
    pub fn sub_algebra(&self, basis: &[Vec<BigInt>], unit: &[BigInt]) -> Result<AlgebraData> {
        let n = self.rank();
        let span = SubBasis::new(self.base(), n, basis)?;
        let r = basis.len();
        let mut sc = Vec::new();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let prod = self.mul_vec(x, y);
                let coords = span.coordinates(&prod).ok_or(Error::NotClosed)?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        sc.push((i, j, k, c));
                    }
                }
            }
        }
        let unit_coords = span
            .coordinates(unit)
            .ok_or_else(|| Error::InvalidAlgebra("unit outside the subalgebra".into()))?;
        let homogeneous: Option<Vec<(u32, Parity)>> =
            basis.iter().map(|b| self.is_homogeneous(b)).collect();
        let (degrees, parities) = match homogeneous {
            Some(h) => h.into_iter().unzip(),
            None => (vec![0; r], vec![Parity::Even; r]),
        };
        let top = degrees.iter().copied().max().unwrap_or(0);
        AlgebraData::new(AlgebraParts {
            base: self.base(),
            labels: (0..r).map(|i| format!("v{i}")).collect(),
            degrees,
            parities,
            unit: unit_coords,
            structure_constants: sc,
            top_degree: Some(top),
            provenance: None,
        })
    }

    /// Reduction of an algebra over Z modulo a prime, revalidated.
    pub fn reduce_mod_p(&self, p: u64) -> Result<AlgebraData> {
        if self.base() != BaseRing::Integers {
            return Err(Error::UnsupportedBase(format!(
                "reduction mod {p} needs an algebra over Z, got {}",
                self.base()
            )));
        }
        let base = BaseRing::prime_field(p)?;
        let mut parts = self.parts();
        parts.base = base;
        AlgebraData::new(parts)
    }

    /// Span of the basis elements of degree `i`.
    pub fn graded_component(&self, i: u32) -> Result<Lattice> {
        if i > self.top_degree() {
            return Err(Error::DegreeOutOfRange(i, self.top_degree()));
        }
        Ok(Lattice::coordinate(
            self.rank(),
            (0..self.rank()).filter(|&k| self.degree(k) == i),
        ))
    }

    /// Basis indices of degree `i`, in basis order.
    pub fn degree_indices(&self, i: u32) -> Vec<usize> {
        (0..self.rank()).filter(|&k| self.degree(k) == i).collect()
    }

    /// The degree-zero part as a unital algebra, with its basis indices in `self`.
    pub fn degree_zero_subalgebra(&self) -> Result<(AlgebraData, Vec<usize>)> {
        let idx = self.degree_indices(0);
        let n = self.rank();
        let basis: Vec<Vec<BigInt>> = idx.iter().map(|&i| Element::basis(n, i).coeffs).collect();
        let alg = self.sub_algebra(&basis, &self.unit())?;
        Ok((alg, idx))
    }
}

/// Coordinates with respect to a fixed (not renormalized) list of independent
/// rows. Precomputes the inverse of a maximal nonsingular column minor.
pub(crate) struct SubBasis {
    rows: Vec<Vec<BigInt>>,
    kind: SolverKind,
}

enum SolverKind {
    Empty,
    Rational {
        cols: Vec<usize>,
        inv: Matrix<BigRational>,
    },
    Modular {
        f: Fp,
        cols: Vec<usize>,
        inv: Matrix<u64>,
    },
}

impl SubBasis {
    pub(crate) fn new(base: BaseRing, ambient: usize, rows: &[Vec<BigInt>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != ambient) {
            return Err(Error::Dimension("basis row length".into()));
        }
        let dependent = || Error::InvalidAlgebra("subalgebra basis is not independent".into());
        if rows.is_empty() {
            return Ok(SubBasis {
                rows: Vec::new(),
                kind: SolverKind::Empty,
            });
        }
        let m = Matrix::from_rows(ambient, rows.to_vec())?;
        let kind = match base {
            BaseRing::PrimeField(p) => {
                let f = Fp::new(p);
                let mm = f.lift_matrix(&m);
                let e = field::rref(&f, &mm);
                if e.rank() != rows.len() {
                    return Err(dependent());
                }
                let inv = field::inverse(&f, &mm.select_cols(&e.pivots)).ok_or_else(dependent)?;
                SolverKind::Modular {
                    f,
                    cols: e.pivots,
                    inv,
                }
            }
            _ => {
                let q = field::Rationals;
                let mq = m.to_rational();
                let e = field::rref(&q, &mq);
                if e.rank() != rows.len() {
                    return Err(dependent());
                }
                let inv = field::inverse(&q, &mq.select_cols(&e.pivots)).ok_or_else(dependent)?;
                SolverKind::Rational { cols: e.pivots, inv }
            }
        };
        Ok(SubBasis {
            rows: rows.to_vec(),
            kind,
        })
    }

    pub(crate) fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let coords: Vec<BigInt> = match &self.kind {
            SolverKind::Empty => return v.iter().all(Zero::is_zero).then(Vec::new),
            SolverKind::Rational { cols, inv } => {
                let w: Vec<BigRational> = cols
                    .iter()
                    .map(|&c| BigRational::from_integer(v[c].clone()))
                    .collect();
                let c = inv.left_apply(&w).ok()?;
                c.into_iter()
                    .map(|x| x.is_integer().then(|| x.to_integer()))
                    .collect::<Option<_>>()?
            }
            SolverKind::Modular { f, cols, inv } => {
                let w: Vec<u64> = cols.iter().map(|&c| f.from_int(&v[c])).collect();
                (0..inv.cols())
                    .map(|j| {
                        let mut acc = 0u64;
                        for (i, x) in w.iter().enumerate() {
                            acc = f.add(&acc, &f.mul(x, &inv[(i, j)]));
                        }
                        BigInt::from(acc)
                    })
                    .collect()
            }
        };
        // Confirm the full vector, not just the pivot columns, is reproduced.
        let mut recon = vec![BigInt::zero(); v.len()];
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in recon.iter_mut().zip(row) {
                if !x.is_zero() {
                    *r += c * x;
                }
            }
        }
        let matches = match &self.kind {
            SolverKind::Modular { f, .. } => recon
                .iter()
                .zip(v)
                .all(|(a, b)| f.from_int(a) == f.from_int(b)),
            _ => recon == v,
        };
        matches.then_some(coords)
    }
}

/// Orthogonal idempotents `e_0, ..., e_k` summing to the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentDecomposition {
    parts: Vec<Element>,
}

impl IdempotentDecomposition {
    pub fn new(alg: &AlgebraData, parts: Vec<Element>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidDecomposition("no idempotents".into()));
        }
        let n = alg.rank();
        if parts.iter().any(|e| e.len() != n) {
            return Err(Error::Dimension("idempotent length".into()));
        }
        let parts: Vec<Element> = parts
            .into_iter()
            .map(|e| Element::new(alg.normalize(e.coeffs)))
            .collect();
        let mut sum = vec![BigInt::zero(); n];
        for (i, e) in parts.iter().enumerate() {
            for (j, f) in parts.iter().enumerate() {
                let prod = alg.mul_vec(e, f);
                let ok = if i == j {
                    prod == e.coeffs
                } else {
                    prod.iter().all(Zero::is_zero)
                };
                if !ok {
                    return Err(Error::InvalidDecomposition(if i == j {
                        format!("e_{i} is not idempotent")
                    } else {
                        format!("e_{i} e_{j} is nonzero")
                    }));
                }
            }
            sum = alg.add(&sum, e).coeffs;
        }
        if sum != alg.unit().coeffs {
            return Err(Error::InvalidDecomposition("idempotents do not sum to the unit".into()));
        }
        Ok(IdempotentDecomposition { parts })
    }

    pub fn trivial(alg: &AlgebraData) -> Self {
        IdempotentDecomposition {
            parts: vec![alg.unit()],
        }
    }

    pub fn parts(&self) -> &[Element] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn reduce_mod_p(&self, reduced: &AlgebraData) -> Result<Self> {
        IdempotentDecomposition::new(reduced, self.parts.clone())
    }

    /// Moves part `i` to the front.
    pub fn with_first(&self, i: usize) -> Self {
        let mut parts = self.parts.clone();
        let e = parts.remove(i);
        parts.insert(0, e);
        IdempotentDecomposition { parts }
    }
}

/// Vertex-style check used in tests: `sum of e_i A e_j` is everything and the
/// corners meet trivially.
pub fn peirce_is_complete(alg: &AlgebraData, decomp: &IdempotentDecomposition) -> Result<bool> {
    let mut total = 0;
    let mut gens = Vec::new();
    for e in decomp.parts() {
        for f in decomp.parts() {
            let c = alg.peirce_corner(e, f)?;
            total += c.rank();
            gens.extend(c.basis().iter().cloned());
        }
    }
    let full = match alg.base() {
        BaseRing::Integers => Lattice::new(alg.rank(), gens)? == Lattice::full(alg.rank()),
        _ => Span::new(alg.base(), alg.rank(), gens)?.rank() == alg.rank(),
    };
    Ok(full && total == alg.rank())
}
