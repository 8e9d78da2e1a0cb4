//! Linear forms, Gram matrices, symmetrizing-form checks and the modular
//! symmetric-algebra search.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraData, Provenance};
use crate::error::{Error, Result};
use crate::linalg::field::{self, Field, Fp, Rationals};
use crate::linalg::{BaseRing, Matrix, QMatrix};

pub const DEFAULT_FORM_CAP: u128 = 1_000_000;
pub const RANDOM_TRIALS: usize = 64;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// A functional on an algebra, as its values on the basis. Rational values are
/// allowed so that forms on a sublattice can be written in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub coeffs: Vec<BigRational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        LinearForm { coeffs }
    }

    pub fn from_ints(xs: &[BigInt]) -> Self {
        LinearForm::new(xs.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    pub fn from_i64(xs: &[i64]) -> Self {
        LinearForm::new(xs.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LinearForm::new(vec![BigRational::zero(); rank])
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, v: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for (c, x) in self.coeffs.iter().zip(v) {
            if !c.is_zero() && !x.is_zero() {
                acc += c * BigRational::from_integer(x.clone());
            }
        }
        acc
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }
}

fn check_len(alg: &AlgebraData, t: &LinearForm) -> Result<()> {
    if t.len() != alg.rank() {
        return Err(Error::Dimension(format!(
            "form of length {} on an algebra of rank {}",
            t.len(),
            alg.rank()
        )));
    }
    Ok(())
}

/// `G[i][j] = t(x_i x_j)` for the given basis rows.
pub fn gram_on_basis(alg: &AlgebraData, t: &LinearForm, basis: &[Vec<BigInt>]) -> Result<QMatrix> {
    check_len(alg, t)?;
    let k = basis.len();
    let mut g = Matrix::filled(k, k, BigRational::zero());
    for i in 0..k {
        for j in 0..k {
            let v = t.eval(&alg.mul_vec(&basis[i], &basis[j]));
            g[(i, j)] = reduce_value(alg.base(), v)?;
        }
    }
    Ok(g)
}

fn reduce_value(base: BaseRing, v: BigRational) -> Result<BigRational> {
    match base {
        BaseRing::PrimeField(_) => {
            if !v.is_integer() {
                return Err(Error::Dimension("non-integral form over a prime field".into()));
            }
            Ok(BigRational::from_integer(base.normalize(v.to_integer())))
        }
        _ => Ok(v),
    }
}

/// `G[i][j] = t(b_i b_j)`.
pub fn gram_matrix(alg: &AlgebraData, t: &LinearForm) -> Result<QMatrix> {
    check_len(alg, t)?;
    let n = alg.rank();
    let mut g = Matrix::filled(n, n, BigRational::zero());
    for (i, j, k, c) in alg.structure_constants() {
        let v = &t.coeffs[k];
        if !v.is_zero() {
            g[(i, j)] += v * BigRational::from_integer(c.clone());
        }
    }
    if let BaseRing::PrimeField(_) = alg.base() {
        for i in 0..n {
            for j in 0..n {
                let v = std::mem::take(&mut g[(i, j)]);
                g[(i, j)] = reduce_value(alg.base(), v)?;
            }
        }
    }
    Ok(g)
}

pub fn is_symmetric_matrix(g: &QMatrix) -> bool {
    g.rows() == g.cols() && (0..g.rows()).all(|i| (0..i).all(|j| g[(i, j)] == g[(j, i)]))
}

/// Whether `det g` is a unit of `base` (with integral entries over Z).
pub fn det_is_unit(base: BaseRing, g: &QMatrix) -> bool {
    match base {
        BaseRing::Integers => {
            g.rows() == g.cols()
                && (0..g.rows()).all(|i| (0..g.cols()).all(|j| g[(i, j)].is_integer()))
                && field::det(&Rationals, g).abs().is_one()
        }
        BaseRing::PrimeField(p) => {
            let f = Fp::new(p);
            let m = g.map(|x| f.from_int(&x.to_integer()));
            !f.is_zero(&field::det(&f, &m))
        }
        BaseRing::Rationals => !field::det(&Rationals, g).is_zero(),
    }
}

/// Symmetric Gram matrix with unit determinant.
pub fn is_symmetrizing(alg: &AlgebraData, t: &LinearForm) -> Result<bool> {
    let g = gram_matrix(alg, t)?;
    Ok(is_symmetric_matrix(&g) && det_is_unit(alg.base(), &g))
}

/// The inverse of the Gram matrix over the base ring, when the form is perfect.
pub fn perfectness_witness(alg: &AlgebraData, t: &LinearForm) -> Result<Option<QMatrix>> {
    let g = gram_matrix(alg, t)?;
    if !det_is_unit(alg.base(), &g) {
        return Ok(None);
    }
    Ok(match alg.base() {
        BaseRing::PrimeField(p) => {
            let f = Fp::new(p);
            let m = g.map(|x| f.from_int(&x.to_integer()));
            field::inverse(&f, &m).map(|inv| inv.map(|&x| BigRational::from_integer(x.into())))
        }
        _ => field::inverse(&Rationals, &g),
    })
}

/// `t` vanishes on every basis element whose degree is not `n`.
pub fn is_degree_form(alg: &AlgebraData, t: &LinearForm, n: u32) -> Result<bool> {
    check_len(alg, t)?;
    Ok((0..alg.rank()).all(|i| alg.degree(i) == n || t.coeffs[i].is_zero()))
}

/// Value 1 on every socle element `c_j` of a canonical Brauer-line algebra.
pub fn canonical_form(alg: &AlgebraData) -> Result<LinearForm> {
    match alg.provenance() {
        Some(Provenance::AEll(_)) | Some(Provenance::ATildeEll(_)) => {}
        None => {
            return Err(Error::UnknownProvenance(
                "canonical forms exist only for the canonical Brauer-line algebras".into(),
            ))
        }
    }
    Ok(LinearForm::new(
        (0..alg.rank())
            .map(|i| {
                if alg.degree(i) == 2 && alg.labels()[i].starts_with("c_") {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect(),
    ))
}

/// One square block of the Gram matrix pairing degree `j` with degree `top - j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingBlock {
    pub degree: u32,
    pub partner: u32,
    pub rows: usize,
    pub cols: usize,
    pub determinant: Option<String>,
    pub perfect: bool,
}

/// Blocks `B_j[x][y] = t(x y)` for homogeneous bases of degree `j` and `top - j`.
/// `bases[j]` lists basis rows of degree `j`.
pub fn graded_pairing_blocks(
    alg: &AlgebraData,
    t: &LinearForm,
    bases: &[Vec<Vec<BigInt>>],
    top: u32,
) -> Result<Vec<PairingBlock>> {
    check_len(alg, t)?;
    let mut out = Vec::new();
    for j in 0..=top {
        let (a, b) = (&bases[j as usize], &bases[(top - j) as usize]);
        let mut g = Matrix::filled(a.len(), b.len(), BigRational::zero());
        for (x, row) in a.iter().enumerate() {
            for (y, col) in b.iter().enumerate() {
                g[(x, y)] = reduce_value(alg.base(), t.eval(&alg.mul_vec(row, col)))?;
            }
        }
        let square = a.len() == b.len();
        let determinant = square.then(|| field::det(&Rationals, &g).to_string());
        let perfect = square && det_is_unit(alg.base(), &g);
        out.push(PairingBlock {
            degree: j,
            partner: top - j,
            rows: a.len(),
            cols: b.len(),
            determinant,
            perfect,
        });
    }
    Ok(out)
}

/// Graded pairing blocks on the algebra's own homogeneous basis.
pub fn basis_pairing_blocks(alg: &AlgebraData, t: &LinearForm) -> Result<Vec<PairingBlock>> {
    let top = alg.top_degree();
    let bases: Vec<Vec<Vec<BigInt>>> = (0..=top)
        .map(|d| {
            alg.degree_indices(d)
                .into_iter()
                .map(|i| crate::algebra::Element::basis(alg.rank(), i).coeffs)
                .collect()
        })
        .collect();
    graded_pairing_blocks(alg, t, &bases, top)
}

/// Basis of the trace forms `{t : t(ab) = t(ba)}` over a prime field.
pub fn symmetric_form_space(alg: &AlgebraData) -> Result<Vec<LinearForm>> {
    let BaseRing::PrimeField(_) = alg.base() else {
        return Err(Error::UnsupportedBase("trace-form space needs a prime field".into()));
    };
    let n = alg.rank();
    // Row k, column (i, j): coefficient of b_k in [b_i, b_j].
    let mut m = Matrix::zeros(n, n * n);
    for (i, j, k, c) in alg.structure_constants() {
        m[(k, i * n + j)] += c;
        m[(k, j * n + i)] -= c;
    }
    Ok(crate::algebra::left_kernel(alg.base(), &m)
        .into_iter()
        .map(|v| LinearForm::from_ints(&v))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetricVerdict {
    /// A symmetrizing form and the inverse of its Gram matrix.
    Yes { form: LinearForm, gram_inverse: QMatrix, exhaustive: bool },
    /// Every trace form was enumerated and all Gram matrices are singular.
    No { checked: u128 },
    /// The random search found nothing; not a negative claim.
    Inconclusive { trials: usize, seed: u64 },
}

impl SymmetricVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            SymmetricVerdict::Yes { .. } => "yes",
            SymmetricVerdict::No { .. } => "no",
            SymmetricVerdict::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, SymmetricVerdict::Yes { .. })
    }
}

struct FormSearch {
    f: Fp,
    grams: Vec<Matrix<u64>>,
    basis: Vec<Vec<u64>>,
    n: usize,
}

impl FormSearch {
    fn combine(&self, coeffs: &[u64]) -> (Vec<u64>, Matrix<u64>) {
        let f = &self.f;
        let mut g = Matrix::filled(self.n, self.n, 0u64);
        let mut form = vec![0u64; self.n];
        for (c, (gm, b)) in coeffs.iter().zip(self.grams.iter().zip(&self.basis)) {
            if *c == 0 {
                continue;
            }
            for i in 0..self.n {
                form[i] = f.add(&form[i], &f.mul(c, &b[i]));
                for j in 0..self.n {
                    g[(i, j)] = f.add(&g[(i, j)], &f.mul(c, &gm[(i, j)]));
                }
            }
        }
        (form, g)
    }

    fn try_coeffs(&self, coeffs: &[u64]) -> Option<(Vec<u64>, Matrix<u64>)> {
        let (form, g) = self.combine(coeffs);
        let inv = field::inverse(&self.f, &g)?;
        Some((form, inv))
    }
}

fn yes(form: Vec<u64>, inv: Matrix<u64>, exhaustive: bool) -> SymmetricVerdict {
    SymmetricVerdict::Yes {
        form: LinearForm::new(form.into_iter().map(|x| BigRational::from_integer(x.into())).collect()),
        gram_inverse: inv.map(|&x| BigRational::from_integer(x.into())),
        exhaustive,
    }
}

/// Searches the trace-form space for a form with nonsingular Gram matrix.
/// Exhaustive (so a "no" is certified) when `p^dim <= cap`; otherwise a seeded
/// random search that can only answer yes or inconclusive.
pub fn is_symmetric_algebra(alg: &AlgebraData, cap: u128, seed: u64) -> Result<SymmetricVerdict> {
    let BaseRing::PrimeField(p) = alg.base() else {
        return Err(Error::UnsupportedBase("symmetric-algebra search needs a prime field".into()));
    };
    let f = Fp::new(p);
    let space = symmetric_form_space(alg)?;
    let basis: Vec<Vec<u64>> = space
        .iter()
        .map(|t| t.coeffs.iter().map(|c| f.from_int(&c.to_integer())).collect())
        .collect();
    let grams = space
        .iter()
        .map(|t| Ok(gram_matrix(alg, t)?.map(|x| f.from_int(&x.to_integer()))))
        .collect::<Result<Vec<_>>>()?;
    let search = FormSearch {
        f,
        grams,
        basis,
        n: alg.rank(),
    };
    let k = space.len();
    let total = (p as u128).checked_pow(k as u32);
    match total {
        Some(total) if total <= cap => {
            let decode = |mut idx: u128| -> Vec<u64> {
                let mut c = vec![0u64; k];
                for slot in c.iter_mut() {
                    *slot = (idx % p as u128) as u64;
                    idx /= p as u128;
                }
                c
            };
            // Smallest index wins so the witness does not depend on scheduling.
            let hit = (0..total.to_u64().expect("cap fits in u64"))
                .into_par_iter()
                .find_first(|&idx| search.try_coeffs(&decode(idx as u128)).is_some());
            Ok(match hit {
                Some(idx) => {
                    let (form, inv) = search.try_coeffs(&decode(idx as u128)).expect("rechecked");
                    yes(form, inv, true)
                }
                None => SymmetricVerdict::No { checked: total },
            })
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..RANDOM_TRIALS {
                let c: Vec<u64> = (0..k).map(|_| rng.random_range(0..p)).collect();
                if let Some((form, inv)) = search.try_coeffs(&c) {
                    return Ok(yes(form, inv, false));
                }
            }
            Ok(SymmetricVerdict::Inconclusive {
                trials: RANDOM_TRIALS,
                seed,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::{direct_product, ground_ring, square_zero_plane, truncated_polynomial, upper_triangular};
    use crate::quiver::{canonical_a_ell, canonical_a_tilde_ell};
    use crate::schur::matrix_superalgebra;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn gram_examples() {
        let a1 = canonical_a_ell(1, BaseRing::Integers).unwrap();
        let g = gram_matrix(&a1, &LinearForm::from_i64(&[0, 1])).unwrap();
        assert_eq!(g, Matrix::from_rows(2, vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap());
        assert!(gram_matrix(&a1, &LinearForm::zero(2)).unwrap().to_rows().iter().flatten().all(Zero::is_zero));
        assert!(!is_symmetrizing(&a1, &LinearForm::from_i64(&[1, 0])).unwrap());
        assert!(!is_symmetrizing(&a1, &LinearForm::from_i64(&[0, 3])).unwrap());
        let t1 = canonical_a_tilde_ell(1, BaseRing::Integers).unwrap();
        let g = gram_matrix(&t1, &LinearForm::from_i64(&[0, 0, 1])).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g[(i, j)], q(i64::from(i + j == 2)));
            }
        }
    }

    #[test]
    fn canonical_forms_need_provenance() {
        let a2 = canonical_a_ell(2, BaseRing::Integers).unwrap();
        let t = canonical_form(&a2).unwrap();
        assert!(is_symmetrizing(&a2, &t).unwrap());
        assert!(is_degree_form(&a2, &t, 2).unwrap());
        assert!(!is_degree_form(&a2, &LinearForm::from_i64(&[1, 0, 0, 0, 0, 0]), 2).unwrap());
        let plain = truncated_polynomial(BaseRing::Integers, 2, 2).unwrap();
        assert!(matches!(canonical_form(&plain), Err(Error::UnknownProvenance(_))));
    }

    #[test]
    fn trace_form_spaces() {
        let m2 = matrix_superalgebra(&ground_ring(BaseRing::PrimeField(5)).unwrap(), 2).unwrap();
        let space = symmetric_form_space(&m2).unwrap();
        assert_eq!(space.len(), 1);
        // The trace, up to scaling.
        let t = &space[0];
        assert_eq!(t.coeffs[0], t.coeffs[3]);
        assert!(t.coeffs[1].is_zero() && t.coeffs[2].is_zero());
        let dual = truncated_polynomial(BaseRing::PrimeField(2), 2, 1).unwrap();
        assert_eq!(symmetric_form_space(&dual).unwrap().len(), 2);
    }

    #[test]
    fn symmetric_algebra_search() {
        let dual = truncated_polynomial(BaseRing::PrimeField(2), 2, 1).unwrap();
        assert!(is_symmetric_algebra(&dual, DEFAULT_FORM_CAP, DEFAULT_SEED).unwrap().is_yes());
        let f2 = ground_ring(BaseRing::PrimeField(2)).unwrap();
        let prod = direct_product(&f2, &f2).unwrap();
        assert!(is_symmetric_algebra(&prod, DEFAULT_FORM_CAP, DEFAULT_SEED).unwrap().is_yes());
        for p in [2, 3, 5] {
            let ut = upper_triangular(BaseRing::PrimeField(p)).unwrap();
            assert!(matches!(is_symmetric_algebra(&ut, DEFAULT_FORM_CAP, DEFAULT_SEED).unwrap(), SymmetricVerdict::No { .. }));
            let plane = square_zero_plane(BaseRing::PrimeField(p)).unwrap();
            assert!(matches!(is_symmetric_algebra(&plane, DEFAULT_FORM_CAP, DEFAULT_SEED).unwrap(), SymmetricVerdict::No { .. }));
        }
        // With a cap of zero nothing is enumerated.
        let ut = upper_triangular(BaseRing::PrimeField(3)).unwrap();
        assert!(matches!(is_symmetric_algebra(&ut, 0, 1).unwrap(), SymmetricVerdict::Inconclusive { .. }));
    }
}
