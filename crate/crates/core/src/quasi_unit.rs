//! Quasi-units: the brute-force decision procedure over prime fields, the
//! idempotent-decomposition certificate, and a harness for the Nakayama-type
//! lemma that turns a quasi-unit inside an ideal into `I = A`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{left_kernel, AlgebraData, Element, IdempotentDecomposition};
use crate::error::{Error, Result};
use crate::linalg::field::{self, Field, Fp};
use crate::linalg::{BaseRing, Lattice, Matrix, Span, ZMatrix};

pub const DEFAULT_CENTER_CAP: u128 = 1 << 20;
/// Random candidates tried for a cyclic generator after basis elements and pair sums.
pub const GENERATOR_BUDGET: usize = 64;

fn prime_field(alg: &AlgebraData, what: &str) -> Result<Fp> {
    match alg.base() {
        BaseRing::PrimeField(p) => Ok(Fp::new(p)),
        other => Err(Error::UnsupportedBase(format!("{what} needs a prime field, got {other}"))),
    }
}

fn check_len(alg: &AlgebraData, v: &[BigInt]) -> Result<()> {
    if v.len() != alg.rank() {
        return Err(Error::Dimension(format!(
            "element of length {} in an algebra of rank {}",
            v.len(),
            alg.rank()
        )));
    }
    Ok(())
}

fn residues(f: &Fp, v: &[BigInt]) -> Vec<u64> {
    v.iter().map(|x| f.from_int(x)).collect()
}

fn lift(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Whether left multiplication by `z` is invertible. For central `z` this is
/// the same as `z` being a unit.
pub fn is_unit(alg: &AlgebraData, z: &[BigInt]) -> Result<bool> {
    let f = prime_field(alg, "unit test")?;
    check_len(alg, z)?;
    let l = f.lift_matrix(&alg.left_mult_matrix(z));
    Ok(field::rank(&f, &l) == alg.rank())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiUnitVerdict {
    /// No central non-unit `z` has `ξ ∈ A z`. `checked` counts enumerated
    /// central elements; it is zero when `ξ` is itself a unit.
    Yes { central_dim: usize, checked: u128 },
    /// `ξ = a z` with `z` central and not a unit.
    No { z: Element, a: Element },
    Inconclusive { central_dim: usize, cap: u128 },
}

impl QuasiUnitVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            QuasiUnitVerdict::Yes { .. } => "yes",
            QuasiUnitVerdict::No { .. } => "no",
            QuasiUnitVerdict::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, QuasiUnitVerdict::Yes { .. })
    }
}

/// `R_z` is linear in `z`, so the per-basis matrices are combined instead of
/// re-multiplying for every candidate.
struct CenterSweep {
    f: Fp,
    n: usize,
    center: Vec<Vec<u64>>,
    right: Vec<Matrix<u64>>,
    xi: Vec<u64>,
}

impl CenterSweep {
    fn decode(&self, mut idx: u128) -> Vec<u64> {
        let p = self.f.modulus() as u128;
        (0..self.center.len())
            .map(|_| {
                let c = (idx % p) as u64;
                idx /= p;
                c
            })
            .collect()
    }

    fn combine(&self, coeffs: &[u64]) -> (Vec<u64>, Matrix<u64>) {
        let f = &self.f;
        let mut z = vec![0u64; self.n];
        let mut r = Matrix::filled(self.n, self.n, 0u64);
        for (c, (v, m)) in coeffs.iter().zip(self.center.iter().zip(&self.right)) {
            if *c == 0 {
                continue;
            }
            for i in 0..self.n {
                z[i] = f.add(&z[i], &f.mul(c, &v[i]));
                for j in 0..self.n {
                    r[(i, j)] = f.add(&r[(i, j)], &f.mul(c, &m[(i, j)]));
                }
            }
        }
        (z, r)
    }

    /// `(z, a)` when `z` is a non-unit with `a z = ξ`.
    fn witness(&self, coeffs: &[u64]) -> Option<(Vec<u64>, Vec<u64>)> {
        let (z, r) = self.combine(coeffs);
        if field::rank(&self.f, &r) == self.n {
            return None;
        }
        field::solve_left(&self.f, &r, &self.xi).map(|a| (z, a))
    }
}

/// Decides whether `ξ` is a quasi-unit by enumerating the centre, when the
/// centre has at most `cap` elements.
pub fn quasi_unit_bruteforce(alg: &AlgebraData, xi: &[BigInt], cap: u128) -> Result<QuasiUnitVerdict> {
    let f = prime_field(alg, "quasi-unit test")?;
    check_len(alg, xi)?;
    let n = alg.rank();
    let center = alg.center_basis();
    let k = center.len();
    if is_unit(alg, xi)? {
        return Ok(QuasiUnitVerdict::Yes { central_dim: k, checked: 0 });
    }
    // A central non-unit ξ is its own witness: ξ = 1 ξ.
    if alg.is_central(xi) {
        return Ok(QuasiUnitVerdict::No {
            z: Element::new(alg.normalize(xi.to_vec())),
            a: alg.unit(),
        });
    }
    let total = match (f.modulus() as u128).checked_pow(k as u32) {
        Some(t) if t <= cap => t,
        _ => return Ok(QuasiUnitVerdict::Inconclusive { central_dim: k, cap }),
    };
    let sweep = CenterSweep {
        f,
        n,
        right: center.iter().map(|z| f.lift_matrix(&alg.right_mult_matrix(z))).collect(),
        center: center.iter().map(|z| residues(&f, z)).collect(),
        xi: residues(&f, xi),
    };
    let total64 = total.to_u64().expect("cap fits in u64");
    // Smallest index wins so the witness does not depend on scheduling.
    let hit = (0..total64)
        .into_par_iter()
        .find_first(|&idx| sweep.witness(&sweep.decode(idx as u128)).is_some());
    Ok(match hit {
        Some(idx) => {
            let (z, a) = sweep.witness(&sweep.decode(idx as u128)).expect("rechecked");
            QuasiUnitVerdict::No {
                z: Element::new(lift(&z)),
                a: Element::new(lift(&a)),
            }
        }
        None => QuasiUnitVerdict::Yes { central_dim: k, checked: total },
    })
}

/// Where the cyclic generator of `e_i A e_0` comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generators {
    /// One candidate per `i >= 1`, in decomposition order.
    Given(Vec<Element>),
    /// Basis elements, then pair sums, then seeded random combinations.
    Search { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PidquWitness {
    pub index: usize,
    pub corner_rank: usize,
    pub end_rank: usize,
    /// Determinant of `e_i A e_i -> End(e_i A e_0)` in the chosen bases.
    pub comparison_det: BigInt,
    pub generator: Element,
    pub generator_source: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PidquVerdict {
    Certified(Vec<PidquWitness>),
    NotApplicable { index: usize, reason: String },
}

impl PidquVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            PidquVerdict::Certified(_) => "certified",
            PidquVerdict::NotApplicable { .. } => "not_applicable",
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, PidquVerdict::Certified(_))
    }
}

/// Arithmetic in the algebra's base ring, reduced where that makes sense.
struct Ring(BaseRing);

impl Ring {
    fn det(&self, m: &ZMatrix) -> Result<BigInt> {
        match self.0 {
            BaseRing::PrimeField(p) => {
                let f = Fp::new(p);
                Ok(BigInt::from(field::det(&f, &f.lift_matrix(m))))
            }
            _ => m.det(),
        }
    }

    fn is_unit(&self, x: &BigInt) -> bool {
        match self.0 {
            BaseRing::PrimeField(_) => !x.is_zero(),
            _ => x.abs().is_one(),
        }
    }

    /// Whether `gens` span all of `target` (equality of submodules, not just of saturations).
    fn generates(&self, ambient: usize, gens: Vec<Vec<BigInt>>, target: &Span) -> Result<bool> {
        if gens.iter().any(|g| !target.contains(g)) {
            return Ok(false);
        }
        match self.0 {
            BaseRing::PrimeField(_) => Ok(Span::new(self.0, ambient, gens)?.rank() == target.rank()),
            _ => Ok(Lattice::new(ambient, gens)? == target.as_lattice().expect("span over Z")),
        }
    }
}

/// Checks both conditions of the idempotent criterion for `e_0` (the first
/// part of `decomp`) to be a quasi-unit.
pub fn pidqu_certificate(
    alg: &AlgebraData,
    decomp: &IdempotentDecomposition,
    generators: &Generators,
) -> Result<PidquVerdict> {
    if alg.base() == BaseRing::Rationals {
        return Err(Error::UnsupportedBase("certificates run over Z or F_p".into()));
    }
    // Revalidate against this algebra; the decomposition may come from elsewhere.
    let decomp = IdempotentDecomposition::new(alg, decomp.parts().to_vec())?;
    let parts = decomp.parts();
    if let Generators::Given(g) = generators {
        if g.len() != parts.len() - 1 {
            return Err(Error::Dimension(format!(
                "{} generators for {} non-leading idempotents",
                g.len(),
                parts.len() - 1
            )));
        }
    }
    let ring = Ring(alg.base());
    let n = alg.rank();
    let e0 = &parts[0];
    let r_basis = alg.peirce_corner(e0, e0)?.basis().to_vec();
    let mut witnesses = Vec::new();
    for (i, ei) in parts.iter().enumerate().skip(1) {
        let m = alg.peirce_corner(ei, e0)?;
        let w = alg.peirce_corner(ei, ei)?;
        let a = m.rank();
        let coords = |v: &[BigInt]| {
            m.coordinates(v)
                .ok_or_else(|| Error::Internal("product left the Peirce corner".into()))
        };
        // Y_l[j][k]: coefficient of m_k in m_j y_l.
        let right: Vec<Vec<Vec<BigInt>>> = r_basis
            .iter()
            .map(|y| m.basis().iter().map(|mj| coords(&alg.mul_vec(mj, y))).collect())
            .collect::<Result<_>>()?;
        // Unknown X at index j * a + q; equations (Y X - X Y)[j][q] = 0 per l.
        let mut system = Matrix::zeros(a * a, right.len() * a * a);
        for (l, y) in right.iter().enumerate() {
            for j in 0..a {
                for q in 0..a {
                    let col = (l * a + j) * a + q;
                    for k in 0..a {
                        system[(k * a + q, col)] += &y[j][k];
                        system[(j * a + k, col)] -= &y[k][q];
                    }
                }
            }
        }
        let end = Span::new(alg.base(), a * a, left_kernel(alg.base(), &system))?;
        if end.rank() == 0 && w.rank() > 0 {
            return Ok(PidquVerdict::NotApplicable {
                index: i,
                reason: "(i) fails: End is zero but corner is not".into(),
            });
        }
        if end.rank() != w.rank() {
            return Ok(PidquVerdict::NotApplicable {
                index: i,
                reason: format!(
                    "(i) fails: e_{i}Ae_{i} has rank {} but End has rank {}",
                    w.rank(),
                    end.rank()
                ),
            });
        }
        let lambda_rows = w
            .basis()
            .iter()
            .map(|ws| {
                let mut flat = Vec::with_capacity(a * a);
                for mj in m.basis() {
                    flat.extend(coords(&alg.mul_vec(ws, mj))?);
                }
                end.coordinates(&flat)
                    .ok_or_else(|| Error::Internal("left multiplication is not right-linear".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let lambda = Matrix::from_rows(end.rank(), lambda_rows)?;
        let det = ring.det(&lambda)?;
        if !ring.is_unit(&det) {
            return Ok(PidquVerdict::NotApplicable {
                index: i,
                reason: format!("(i) fails: comparison determinant {det} is not a unit"),
            });
        }
        let generates = |g: &[BigInt]| -> Result<bool> {
            let gens = (0..n)
                .map(|t| alg.mul_vec(&alg.mul_vec(g, &Element::basis(n, t)), e0))
                .collect();
            ring.generates(n, gens, &m)
        };
        let found = match generators {
            Generators::Given(g) => {
                let g = &g[i - 1];
                check_len(alg, g)?;
                (m.contains(g) && generates(g)?).then(|| (g.clone(), "given"))
            }
            Generators::Search { seed } => search_generator(alg, &m, *seed, &generates)?,
        };
        let Some((generator, source)) = found else {
            return Ok(PidquVerdict::NotApplicable {
                index: i,
                reason: format!("(ii) no generator of e_{i}Ae_0 found"),
            });
        };
        witnesses.push(PidquWitness {
            index: i,
            corner_rank: w.rank(),
            end_rank: end.rank(),
            comparison_det: det,
            generator: Element::new(alg.normalize(generator.coeffs)),
            generator_source: source,
        });
    }
    Ok(PidquVerdict::Certified(witnesses))
}

fn search_generator(
    alg: &AlgebraData,
    m: &Span,
    seed: u64,
    generates: &dyn Fn(&[BigInt]) -> Result<bool>,
) -> Result<Option<(Element, &'static str)>> {
    let basis = m.basis();
    if basis.is_empty() {
        let zero = vec![BigInt::zero(); alg.rank()];
        return Ok(generates(&zero)?.then(|| (Element::new(zero), "zero")));
    }
    for b in basis {
        if generates(b)? {
            return Ok(Some((Element::new(b.clone()), "basis")));
        }
    }
    for j in 0..basis.len() {
        for k in j + 1..basis.len() {
            let s = alg.add(&basis[j], &basis[k]);
            if generates(&s)? {
                return Ok(Some((s, "pair")));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> BigInt {
        match alg.base() {
            BaseRing::PrimeField(p) => BigInt::from(rng.random_range(0..p)),
            _ => BigInt::from(rng.random_range(-2i64..=2)),
        }
    };
    for _ in 0..GENERATOR_BUDGET {
        let mut v = vec![BigInt::zero(); alg.rank()];
        for b in basis {
            let c = draw(&mut rng);
            for (x, y) in v.iter_mut().zip(b) {
                *x += &c * y;
            }
        }
        let v = alg.normalize(v);
        if generates(&v)? {
            return Ok(Some((Element::new(v), "random")));
        }
    }
    Ok(None)
}

/// Whether a bimodule isomorphism `A/pA -> I/pI` was exhibited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BimoduleIso {
    /// `a ↦ a x` is bijective; `x` is in ambient coordinates.
    Found(Element),
    /// Every centralizing element was tried.
    Absent,
    /// Too many centralizing elements to enumerate and none of the samples worked.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L2Report {
    pub prime: u64,
    pub ideal_rank: usize,
    pub bimodule_iso: BimoduleIso,
    pub xi_in_ideal: bool,
    pub quasi_unit: QuasiUnitVerdict,
    pub hypotheses_hold: bool,
    /// `Some(I == A)` exactly when the hypotheses hold.
    pub conclusion: Option<bool>,
}

/// Evaluates the hypotheses of the ideal lemma on `(A, I, ξ, p)` and, when they
/// all hold, whether `I = A`. Searches are exhaustive below `cap`.
pub fn lemma_l2_property_test(
    alg: &AlgebraData,
    ideal: &Lattice,
    xi: &[BigInt],
    p: u64,
    cap: u128,
) -> Result<L2Report> {
    if alg.base() != BaseRing::Integers {
        return Err(Error::UnsupportedBase("the ideal lemma is stated over Z".into()));
    }
    check_len(alg, xi)?;
    let n = alg.rank();
    if ideal.ambient_rank() != n {
        return Err(Error::Dimension("ideal lives in the wrong ambient space".into()));
    }
    let reduced = alg.reduce_mod_p(p)?;
    for g in ideal.basis() {
        for t in 0..n {
            let b = Element::basis(n, t);
            if !ideal.contains(&alg.mul_vec(&b, g)) || !ideal.contains(&alg.mul_vec(g, &b)) {
                return Err(Error::NotAnIdeal(format!("not closed under multiplication by b_{t}")));
            }
        }
    }
    let bimodule_iso = find_bimodule_iso(alg, ideal, p, cap)?;
    let xi_in_ideal = ideal.contains(xi);
    let quasi_unit = quasi_unit_bruteforce(&reduced, &reduced.normalize(xi.to_vec()), cap)?;
    let hypotheses_hold = matches!(bimodule_iso, BimoduleIso::Found(_)) && xi_in_ideal && quasi_unit.is_yes();
    let conclusion = hypotheses_hold.then(|| *ideal == Lattice::full(n));
    Ok(L2Report {
        prime: p,
        ideal_rank: ideal.rank(),
        bimodule_iso,
        xi_in_ideal,
        quasi_unit,
        hypotheses_hold,
        conclusion,
    })
}

/// Bimodule maps `A/pA -> I/pI` are `a ↦ a x` for `x` in the centralizer of
/// `I/pI`; look for one that is bijective.
fn find_bimodule_iso(alg: &AlgebraData, ideal: &Lattice, p: u64, cap: u128) -> Result<BimoduleIso> {
    let n = alg.rank();
    let r = ideal.rank();
    if r != n {
        return Ok(BimoduleIso::Absent);
    }
    let f = Fp::new(p);
    let gens = ideal.basis();
    let coords = |v: &[BigInt]| -> Result<Vec<u64>> {
        ideal
            .coordinates(v)
            .map(|c| residues(&f, &c))
            .ok_or_else(|| Error::Internal("product left the ideal".into()))
    };
    // left[t][s], right[t][s]: I-coordinates of b_t g_s and g_s b_t, mod p.
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for t in 0..n {
        let b = Element::basis(n, t);
        left.push(gens.iter().map(|g| coords(&alg.mul_vec(&b, g))).collect::<Result<Vec<_>>>()?);
        right.push(gens.iter().map(|g| coords(&alg.mul_vec(g, &b))).collect::<Result<Vec<_>>>()?);
    }
    // Centralizer: Σ_s x_s (b_t g_s - g_s b_t) = 0 in I/pI for every t.
    let system = Matrix::from_fn(r, n * r, |s, col| {
        let (t, u) = (col / r, col % r);
        f.sub(&left[t][s][u], &right[t][s][u])
    });
    let cent = field::left_nullspace(&f, &system);
    let map_of = |x: &[u64]| -> Matrix<u64> {
        Matrix::from_fn(n, r, |t, u| {
            (0..r).fold(0, |acc, s| f.add(&acc, &f.mul(&x[s], &left[t][s][u])))
        })
    };
    let combine = |c: &[u64]| -> Vec<u64> {
        let mut x = vec![0u64; r];
        for (ci, v) in c.iter().zip(&cent) {
            for (xs, vs) in x.iter_mut().zip(v) {
                *xs = f.add(xs, &f.mul(ci, vs));
            }
        }
        x
    };
    let to_ambient = |x: &[u64]| -> Element {
        let mut v = vec![BigInt::zero(); n];
        for (xs, g) in x.iter().zip(gens) {
            for (vi, gi) in v.iter_mut().zip(g) {
                *vi += BigInt::from(*xs) * gi;
            }
        }
        Element::new(v)
    };
    let k = cent.len();
    let bijective = |c: &[u64]| field::rank(&f, &map_of(&combine(c))) == n;
    match (p as u128).checked_pow(k as u32) {
        Some(total) if total <= cap => {
            let decode = |mut idx: u64| -> Vec<u64> {
                (0..k)
                    .map(|_| {
                        let c = idx % p;
                        idx /= p;
                        c
                    })
                    .collect()
            };
            let total = total.to_u64().expect("cap fits in u64");
            let hit = (0..total).into_par_iter().find_first(|&i| bijective(&decode(i)));
            Ok(match hit {
                Some(i) => BimoduleIso::Found(to_ambient(&combine(&decode(i)))),
                None => BimoduleIso::Absent,
            })
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..GENERATOR_BUDGET {
                let c: Vec<u64> = (0..k).map(|_| rng.random_range(0..p)).collect();
                if bijective(&c) {
                    return Ok(BimoduleIso::Found(to_ambient(&combine(&c))));
                }
            }
            Ok(BimoduleIso::Unknown)
        }
    }
}
