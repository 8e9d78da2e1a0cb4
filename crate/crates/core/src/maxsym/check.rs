use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::sandwich::GradedSandwich;
use super::ser;
use crate::algebra::{Element, IdempotentDecomposition};
use crate::error::{Error, Result};
use crate::forms::{det_is_unit, graded_pairing_blocks, gram_on_basis, is_symmetric_matrix, PairingBlock, DEFAULT_SEED};
use crate::linalg::field::{self, Rationals};
use crate::linalg::{elementary_divisors, hermite_form, kernel_lattice, lattice_sum_equals, BaseRing, Lattice, Matrix, ZMatrix};
use crate::linalg::ring::prime_divisors;
use crate::quasi_unit::{pidqu_certificate, quasi_unit_bruteforce, Generators, PidquVerdict, QuasiUnitVerdict, DEFAULT_CENTER_CAP};

pub const CERTIFIED: &str =
    "certified: T is maximally symmetric among intermediate subalgebras with modularly symmetric reductions";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Largest centre size the quasi-unit sweep will enumerate.
    pub center_cap: u128,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            center_cap: DEFAULT_CENTER_CAP,
            seed: DEFAULT_SEED,
        }
    }
}

/// `T^i` in the coordinates of `S^i`, one row per Hermite generator.
fn component_in_s(sw: &GradedSandwich, i: u32) -> ZMatrix {
    let idx = sw.s().degree_indices(i);
    let rows: Vec<Vec<BigInt>> = sw.t_components()[i as usize]
        .basis()
        .iter()
        .map(|r| idx.iter().map(|&k| r[k].clone()).collect())
        .collect();
    Matrix::from_rows(idx.len(), rows).expect("selected columns")
}

/// Elementary divisors of `T^i ⊆ S^i` for each degree `i`.
pub fn elementary_divisors_by_degree(sw: &GradedSandwich) -> Vec<Vec<BigInt>> {
    (0..=sw.top_degree())
        .map(|i| elementary_divisors(&component_in_s(sw, i)))
        .collect()
}

pub fn is_full_rank(sw: &GradedSandwich) -> bool {
    (0..=sw.top_degree()).all(|i| sw.t_components()[i as usize].rank() == sw.s().degree_indices(i).len())
}

/// Primes dividing some elementary divisor of some `T^i ⊆ S^i`. Away from
/// these, `T` and `S` have the same localization.
pub fn index_primes(sw: &GradedSandwich) -> Result<Vec<u64>> {
    let mut primes: Vec<u64> = Vec::new();
    for divisors in elementary_divisors_by_degree(sw) {
        for d in divisors {
            for p in prime_divisors(&d) {
                primes.push(p.to_u64().ok_or_else(|| Error::IndexTooLarge(p.to_string(), u64::MAX))?);
            }
        }
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormVerdict {
    pub integral: bool,
    pub symmetric: bool,
    /// Vanishes on `T^i` for `i != N`.
    pub degree_form: bool,
    pub gram_det: String,
    pub perfect: bool,
    pub blocks: Vec<PairingBlock>,
    pub pass: bool,
}

/// The form restricted to `T`: symmetric, concentrated in the top degree,
/// unimodular Gram matrix on `T`'s basis, and unimodular graded blocks.
pub fn check_form(sw: &GradedSandwich) -> Result<FormVerdict> {
    let s = sw.s();
    let t = sw.t_form();
    let top = sw.top_degree();
    let basis = sw.t_basis();
    let g = gram_on_basis(s, t, &basis)?;
    let integral = g.to_rows().iter().flatten().all(BigRational::is_integer);
    let symmetric = is_symmetric_matrix(&g);
    let degree_form = sw
        .t_components()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i as u32 != top)
        .all(|(_, c)| c.basis().iter().all(|b| t.eval(b).is_zero()));
    let gram_det = field::det(&Rationals, &g);
    let perfect = det_is_unit(BaseRing::Integers, &g);
    let bases: Vec<Vec<Vec<BigInt>>> = sw.t_components().iter().map(|c| c.basis().to_vec()).collect();
    let blocks = graded_pairing_blocks(s, t, &bases, top)?;
    let pass = integral && symmetric && degree_form && perfect && blocks.iter().all(|b| b.perfect);
    Ok(FormVerdict {
        integral,
        symmetric,
        degree_form,
        gram_det: gram_det.to_string(),
        perfect,
        blocks,
        pass,
    })
}

/// `y = y1 + y2` with `ξ y1 = 0` and `y2 ∈ U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelSplit {
    #[serde(serialize_with = "ser::ints")]
    pub y: Vec<BigInt>,
    #[serde(serialize_with = "ser::ints")]
    pub y1: Vec<BigInt>,
    #[serde(serialize_with = "ser::ints")]
    pub y2: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CondAVerdict {
    /// `{y ∈ S^N : ξ y = 0}`.
    #[serde(serialize_with = "ser::lattice")]
    pub kernel: Lattice,
    #[serde(serialize_with = "ser::lattice")]
    pub u: Lattice,
    pub pass: bool,
    /// One split per Hermite generator of `S^N`, when the check passes.
    pub splits: Vec<KernelSplit>,
}

/// Condition (a) through the sublattice `u` of `T^N` (default `T^N`): passes
/// when `ker(ξ·) ∩ S^N + U = S^N`. Each generator of `S^N` is split
/// explicitly and the split is rechecked.
pub fn check_condition_a(sw: &GradedSandwich, u: Option<&Lattice>) -> Result<CondAVerdict> {
    let s = sw.s();
    let n = s.rank();
    let top = sw.top_degree();
    let u = u.unwrap_or(sw.t_top()).clone();
    if !u.is_sublattice_of(sw.t_top()) {
        return Err(Error::InvalidSandwich("U is not inside T^N".into()));
    }
    let idx = s.degree_indices(top);
    let lx = s.left_mult_matrix(sw.xi());
    let restricted = lx.select_rows(&idx);
    let kernel = Lattice::new(
        n,
        kernel_lattice(&restricted).basis().iter().map(|c| {
            let mut v = vec![BigInt::zero(); n];
            for (&k, x) in idx.iter().zip(c) {
                v[k] = x.clone();
            }
            v
        }),
    )?;
    let target = sw.s_component(top);
    let pass = lattice_sum_equals(&kernel, &u, &target)?;
    let mut splits = Vec::new();
    if pass {
        let stacked: Vec<Vec<BigInt>> = kernel.basis().iter().chain(u.basis()).cloned().collect();
        let k = kernel.rank();
        let m = Matrix::from_rows(n, stacked)?;
        let (h, trans) = hermite_form(&m);
        let r = (0..h.rows()).take_while(|&i| h.row(i).iter().any(|x| !x.is_zero())).count();
        let sum = Lattice::from_matrix(&m);
        for y in target.basis() {
            let d = sum
                .coordinates(y)
                .ok_or_else(|| Error::Internal("generator of S^N outside K + U".into()))?;
            // y = d * h[..r] = (d * trans[..r]) * m.
            let c: Vec<BigInt> = (0..m.rows())
                .map(|j| (0..r).fold(BigInt::zero(), |acc, i| acc + &d[i] * &trans[(i, j)]))
                .collect();
            let combo = |from: usize, to: usize| -> Vec<BigInt> {
                let mut v = vec![BigInt::zero(); n];
                for j in from..to {
                    for (vi, mj) in v.iter_mut().zip(m.row(j)) {
                        *vi += &c[j] * mj;
                    }
                }
                v
            };
            let (y1, y2) = (combo(0, k), combo(k, m.rows()));
            let ok = s.mul_vec(sw.xi(), &y1).iter().all(Zero::is_zero)
                && u.contains(&y2)
                && y1.iter().zip(&y2).zip(y).all(|((a, b), t)| a + b == *t);
            if !ok {
                return Err(Error::Internal("kernel split does not recombine".into()));
            }
            splits.push(KernelSplit { y: y.clone(), y1, y2 });
        }
    }
    Ok(CondAVerdict { kernel, u, pass, splits })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CondBVerdict {
    pub prime: u64,
    /// yes, no or inconclusive.
    pub verdict: &'static str,
    pub method: &'static str,
    pub central_dim: Option<usize>,
    pub enumerated: Option<String>,
    /// Central non-unit `z` (in `S`-coordinates) with `ξ = a z`.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_ints")]
    pub witness_z: Option<Vec<BigInt>>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_ints")]
    pub witness_a: Option<Vec<BigInt>>,
    pub certificate: Option<String>,
    #[serde(skip)]
    pub bruteforce: QuasiUnitVerdict,
    #[serde(skip)]
    pub pidqu: Option<PidquVerdict>,
}

fn opt_ints<S: serde::Serializer>(v: &Option<Vec<BigInt>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser::ints(v, s),
        None => s.serialize_none(),
    }
}

/// Condition (b) at each prime: the centre sweep on `S⁰ mod p`, plus the
/// idempotent certificate when a decomposition of `S⁰` is registered.
pub fn check_condition_b(sw: &GradedSandwich, primes: &[u64], opts: CheckOptions) -> Result<Vec<CondBVerdict>> {
    let (s0, idx) = sw.s0_algebra()?;
    let local = |v: &[BigInt]| -> Vec<BigInt> { idx.iter().map(|&i| v[i].clone()).collect() };
    let ambient = |v: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); sw.s().rank()];
        for (&i, x) in idx.iter().zip(v) {
            out[i] = x.clone();
        }
        out
    };
    let xi0 = local(sw.xi());
    let decomp0: Option<Vec<Element>> = sw
        .s0_decomposition()
        .map(|parts| parts.iter().map(|e| Element::new(local(e))).collect());
    primes
        .par_iter()
        .map(|&p| {
            let red = s0.reduce_mod_p(p)?;
            let xi = red.normalize(xi0.clone());
            let brute = quasi_unit_bruteforce(&red, &xi, opts.center_cap)?;
            let pidqu = match &decomp0 {
                Some(parts) => {
                    let d = IdempotentDecomposition::new(&red, parts.clone())?;
                    Some(pidqu_certificate(&red, &d, &Generators::Search { seed: opts.seed })?)
                }
                None => None,
            };
            let certified = pidqu.as_ref().is_some_and(PidquVerdict::is_certified);
            // The certificate speaks about e_0; it only counts when e_0 = ξ.
            let cert_about_xi = sw
                .s0_decomposition()
                .is_some_and(|parts| red.normalize(local(&parts[0])) == xi);
            let mut v = CondBVerdict {
                prime: p,
                verdict: brute.label(),
                method: "center sweep",
                central_dim: None,
                enumerated: None,
                witness_z: None,
                witness_a: None,
                certificate: pidqu.as_ref().map(|c| match c {
                    PidquVerdict::Certified(_) => "certified".to_string(),
                    PidquVerdict::NotApplicable { reason, .. } => format!("not applicable: {reason}"),
                }),
                bruteforce: brute.clone(),
                pidqu: pidqu.clone(),
            };
            match &brute {
                QuasiUnitVerdict::Yes { central_dim, checked } => {
                    v.central_dim = Some(*central_dim);
                    v.enumerated = Some(checked.to_string());
                    if *checked == 0 {
                        v.method = "unit";
                    }
                }
                QuasiUnitVerdict::No { z, a } => {
                    if certified && cert_about_xi {
                        return Err(Error::Internal(format!(
                            "certificate and centre sweep disagree at p = {p}"
                        )));
                    }
                    v.witness_z = Some(ambient(z));
                    v.witness_a = Some(ambient(a));
                }
                QuasiUnitVerdict::Inconclusive { central_dim, .. } => {
                    v.central_dim = Some(*central_dim);
                    if certified && cert_about_xi {
                        v.verdict = "yes";
                        v.method = "certificate";
                    }
                }
            }
            Ok(v)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub rank: usize,
    pub top_degree: u32,
    pub s_graded_ranks: Vec<usize>,
    pub t_graded_ranks: Vec<usize>,
    pub full_rank: bool,
    pub t0_eq_s0: bool,
    pub elementary_divisors: Vec<Vec<String>>,
    pub primes: Vec<u64>,
    /// The primes are exactly those dividing `[S : T]`, so no other prime matters.
    pub primes_complete: bool,
    pub form: FormVerdict,
    pub cond_a: CondAVerdict,
    pub cond_b: Vec<CondBVerdict>,
    /// certified, hypothesis_failed or inconclusive.
    pub status: &'static str,
    pub failed_hypothesis: Option<String>,
    pub conclusion: String,
}

impl CheckReport {
    pub fn is_certified(&self) -> bool {
        self.status == "certified"
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            "certified" => 0,
            "hypothesis_failed" => 1,
            _ => 2,
        }
    }
}

/// Every hypothesis of the maximality theorem, checked at exactly the primes
/// dividing the index.
pub fn run_main_theorem_check(sw: &GradedSandwich, opts: CheckOptions) -> Result<CheckReport> {
    let top = sw.top_degree();
    let full_rank = is_full_rank(sw);
    let t0_eq_s0 = sw.t_components()[0] == sw.s_component(0);
    let divisors = elementary_divisors_by_degree(sw);
    let primes = index_primes(sw)?;
    let form = check_form(sw)?;
    let cond_a = check_condition_a(sw, sw.u_sublattice())?;
    let cond_b = check_condition_b(sw, &primes, opts)?;
    let failures: Vec<(bool, &str)> = vec![
        (full_rank, "full_rank"),
        (t0_eq_s0, "t0_eq_s0"),
        (form.pass, "form"),
        (cond_a.pass, "cond_a"),
        (!cond_b.iter().any(|v| v.verdict == "no"), "cond_b"),
    ];
    let failed = failures.iter().find(|(ok, _)| !ok).map(|(_, name)| name.to_string());
    let inconclusive = cond_b.iter().find(|v| v.verdict == "inconclusive").map(|v| v.prime);
    let (status, conclusion) = match (&failed, inconclusive) {
        (Some(h), _) => ("hypothesis_failed", format!("not certified: {h} fails")),
        (None, Some(p)) => ("inconclusive", format!("not certified: condition (b) undecided at p = {p}")),
        (None, None) => ("certified", CERTIFIED.to_string()),
    };
    Ok(CheckReport {
        rank: sw.s().rank(),
        top_degree: top,
        s_graded_ranks: sw.s().graded_ranks(),
        t_graded_ranks: sw.t_components().iter().map(Lattice::rank).collect(),
        full_rank,
        t0_eq_s0,
        elementary_divisors: divisors
            .iter()
            .map(|d| d.iter().map(ToString::to_string).collect())
            .collect(),
        primes,
        primes_complete: full_rank,
        form,
        cond_a,
        cond_b,
        status,
        failed_hypothesis: failed,
        conclusion,
    })
}
