//! Bounded search for a small certified sandwich, and the negative control.
//!
//! Candidates are `S = T + Z (w / p)` for a graded algebra `T` with a known
//! symmetrizing form, a prime `p`, and a nonzero `w` in one positive-degree
//! component of `T`, normalized so that its first nonzero coordinate is 1. For
//! each `S` closed under multiplication, `ξ` runs over the unit and then the
//! degree-zero basis elements. The first fully certified instance wins.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::check::{run_main_theorem_check, CheckOptions};
use super::sandwich::GradedSandwich;
use crate::algebra::builders::{trivial_extension, truncated_polynomial, upper_triangular};
use crate::algebra::{AlgebraData, AlgebraParts, Element};
use crate::error::{Error, Result};
use crate::forms::{canonical_form, LinearForm};
use crate::linalg::field::{self, Rationals};
use crate::linalg::{BaseRing, Lattice, QMatrix};
use crate::quiver::{canonical_a_ell, canonical_a_tilde_ell};

pub const SEARCH_PRIMES: [u64; 2] = [2, 3];
pub const MAX_SEARCH_RANK: usize = 6;

/// A graded algebra over Z with a degree-`top` symmetrizing form.
#[derive(Clone, Debug)]
pub struct SearchBase {
    pub name: String,
    pub algebra: AlgebraData,
    pub form: LinearForm,
}

/// The canonical Brauer-line algebras of rank at most six, then the trivial
/// extension of the upper-triangular 2x2 matrices with its dual in degree 2.
pub fn search_bases() -> Result<Vec<SearchBase>> {
    let z = BaseRing::Integers;
    let mut out = Vec::new();
    for (name, alg) in [
        ("A_1", canonical_a_ell(1, z)?),
        ("A~_1", canonical_a_tilde_ell(1, z)?),
        ("A_2", canonical_a_ell(2, z)?),
    ] {
        let form = canonical_form(&alg)?;
        out.push(SearchBase {
            name: name.into(),
            algebra: alg,
            form,
        });
    }
    let ut = upper_triangular(z)?;
    let te = trivial_extension(&ut, 2)?;
    // t(x, f) = f(1).
    let r = ut.rank();
    let unit = ut.unit();
    let form = LinearForm::new(
        (0..te.rank())
            .map(|i| {
                if i < r {
                    BigRational::zero()
                } else {
                    BigRational::from_integer(unit[i - r].clone())
                }
            })
            .collect(),
    );
    out.push(SearchBase {
        name: "upper-triangular trivial extension".into(),
        algebra: te,
        form,
    });
    Ok(out)
}

/// Nonzero vectors of `F_p^k` with leading coefficient 1, in lexicographic order.
fn projective_points(p: u64, k: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..k {
        let free = k - lead - 1;
        let count = p.pow(free as u32);
        for mut code in 0..count {
            let mut v = vec![0u64; k];
            v[lead] = 1;
            for slot in (lead + 1..k).rev() {
                v[slot] = code % p;
                code /= p;
            }
            out.push(v);
        }
    }
    out
}

fn q(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// The algebra on the rational basis `rows` of an overlattice of `x`, or
/// `None` when the rows do not span a ring.
fn rebase(x: &AlgebraData, rows: &[Vec<BigRational>], labels: Vec<String>) -> Result<Option<AlgebraData>> {
    let n = x.rank();
    let b = QMatrix::from_rows(n, rows.to_vec())?;
    let binv = field::inverse(&Rationals, &b).ok_or_else(|| Error::Internal("basis is singular".into()))?;
    let mul = |u: &[BigRational], v: &[BigRational]| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, s) in x.mul_basis(i, j) {
                    out[*k] += a * c * q(s);
                }
            }
        }
        out
    };
    let mut sc = Vec::new();
    for (i, u) in rows.iter().enumerate() {
        for (j, v) in rows.iter().enumerate() {
            let coords = binv.left_apply(&mul(u, v))?;
            if coords.iter().any(|c| !c.is_integer()) {
                return Ok(None);
            }
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    sc.push((i, j, k, c.to_integer()));
                }
            }
        }
    }
    let unit: Vec<BigRational> = x.unit().iter().map(q).collect();
    let unit = binv.left_apply(&unit)?;
    if unit.iter().any(|c| !c.is_integer()) {
        return Ok(None);
    }
    let degrees: Vec<u32> = rows
        .iter()
        .map(|r| x.degree(r.iter().position(|c| !c.is_zero()).expect("nonzero row")))
        .collect();
    let parities = rows
        .iter()
        .map(|r| x.parity(r.iter().position(|c| !c.is_zero()).expect("nonzero row")))
        .collect();
    Ok(Some(AlgebraData::new(AlgebraParts {
        base: BaseRing::Integers,
        labels,
        degrees,
        parities,
        unit: unit.into_iter().map(|c| c.to_integer()).collect(),
        structure_constants: sc,
        top_degree: Some(x.top_degree()),
        provenance: None,
    })?))
}

/// A candidate overlattice: `x` with `w / p` adjoined in degree `degree`.
struct Candidate {
    s: AlgebraData,
    /// Rows of the new basis in the coordinates of `x`.
    rows: Vec<Vec<BigRational>>,
}

fn overlattice(x: &AlgebraData, degree: u32, w: &[u64], p: u64) -> Result<Option<Candidate>> {
    let n = x.rank();
    let idx = x.degree_indices(degree);
    let pz = BigInt::from(p);
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for d in 0..=x.top_degree() {
        let di = x.degree_indices(d);
        if d != degree {
            for &k in &di {
                let mut r = vec![BigRational::zero(); n];
                r[k] = BigRational::one();
                rows.push(r);
                labels.push(x.labels()[k].clone());
            }
            continue;
        }
        // Hermite basis of p X^d + Z w, then divide by p.
        let mut gens: Vec<Vec<BigInt>> = (0..idx.len())
            .map(|j| {
                let mut r = vec![BigInt::zero(); idx.len()];
                r[j] = pz.clone();
                r
            })
            .collect();
        gens.push(w.iter().map(|&c| BigInt::from(c)).collect());
        for h in Lattice::new(idx.len(), gens)?.basis() {
            let mut r = vec![BigRational::zero(); n];
            let mut terms = Vec::new();
            for (j, c) in h.iter().enumerate() {
                if !c.is_zero() {
                    r[idx[j]] = BigRational::new(c.clone(), pz.clone());
                    terms.push((c.clone(), &x.labels()[idx[j]]));
                }
            }
            labels.push(match terms.as_slice() {
                [(c, l)] if *c == pz => (*l).clone(),
                [(c, l)] if c.is_one() => format!("{l}/{p}"),
                _ => format!(
                    "({})/{p}",
                    terms
                        .iter()
                        .map(|(c, l)| if c.is_one() { (*l).clone() } else { format!("{c}{l}") })
                        .collect::<Vec<_>>()
                        .join("+")
                ),
            });
            rows.push(r);
        }
    }
    Ok(rebase(x, &rows, labels)?.map(|s| Candidate { s, rows }))
}

/// Re-expresses `x`'s own data inside the overlattice `S`.
fn sandwich_from(x: &AlgebraData, form: &LinearForm, cand: &Candidate, xi_x: &[BigInt]) -> Result<GradedSandwich> {
    let n = x.rank();
    let b = QMatrix::from_rows(n, cand.rows.clone())?;
    let binv = field::inverse(&Rationals, &b).expect("checked in rebase");
    let to_s = |v: &[BigRational]| -> Result<Vec<BigInt>> {
        let c = binv.left_apply(v)?;
        if c.iter().any(|x| !x.is_integer()) {
            return Err(Error::Internal("T is not inside S".into()));
        }
        Ok(c.into_iter().map(|x| x.to_integer()).collect())
    };
    let mut components = Vec::new();
    for d in 0..=x.top_degree() {
        let gens = x
            .degree_indices(d)
            .into_iter()
            .map(|k| {
                let mut e = vec![BigRational::zero(); n];
                e[k] = BigRational::one();
                to_s(&e)
            })
            .collect::<Result<Vec<_>>>()?;
        components.push(Lattice::new(n, gens)?);
    }
    // t_S(s_r) = t_X(row_r).
    let t_form = LinearForm::new(
        cand.rows
            .iter()
            .map(|r| r.iter().zip(&form.coeffs).map(|(a, b)| a * b).sum())
            .collect(),
    );
    let xi = to_s(&xi_x.iter().map(q).collect::<Vec<_>>())?;
    GradedSandwich::new(cand.s.clone(), components, t_form, Element::new(xi), None)
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub sandwich: GradedSandwich,
    pub base: String,
    pub prime: u64,
    pub degree: u32,
    pub w: Vec<u64>,
    pub xi_label: String,
    /// Closed overlattices examined, over all bases, before the hit.
    pub tried: usize,
}

impl SearchOutcome {
    pub fn note(&self) -> String {
        format!(
            "search hit: base {}, p = {}, adjoined w/p in degree {} with w = {:?}, xi = {}, after {} closed candidates",
            self.base, self.prime, self.degree, self.w, self.xi_label, self.tried
        )
    }

    /// The committed fixture text.
    pub fn fixture_json(&self) -> String {
        let mut doc = self.sandwich.to_doc();
        doc.note = Some(self.note());
        serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n"
    }
}

/// Runs the bounded search; `None` when nothing in range is certified.
pub fn search_positive_fixture(opts: CheckOptions) -> Result<Option<SearchOutcome>> {
    let mut tried = 0;
    for base in search_bases()? {
        let x = &base.algebra;
        if x.rank() > MAX_SEARCH_RANK {
            continue;
        }
        let mut xis: Vec<(String, Vec<BigInt>)> = vec![("1".into(), x.unit().coeffs)];
        for k in x.degree_indices(0) {
            xis.push((x.labels()[k].clone(), Element::basis(x.rank(), k).coeffs));
        }
        for p in SEARCH_PRIMES {
            for degree in 1..=x.top_degree() {
                let k = x.degree_indices(degree).len();
                for w in projective_points(p, k) {
                    let Some(cand) = overlattice(x, degree, &w, p)? else {
                        continue;
                    };
                    tried += 1;
                    for (label, xi) in &xis {
                        let sw = sandwich_from(x, &base.form, &cand, xi)?;
                        if run_main_theorem_check(&sw, opts)?.is_certified() {
                            return Ok(Some(SearchOutcome {
                                sandwich: sw,
                                base: base.name.clone(),
                                prime: p,
                                degree,
                                w,
                                xi_label: label.clone(),
                                tried,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `S = Z[y]/(y^2)` with `y` in degree 2, `T = Z 1 + Z p y`, `t(y) = 1/p`, `ξ = 1`.
/// The form is perfect on `T` but `S` itself is symmetric, so condition (a)
/// has to fail.
pub fn negative_control(p: u64) -> Result<GradedSandwich> {
    let s = truncated_polynomial(BaseRing::Integers, 2, 2)?;
    let t0 = Lattice::new(2, vec![vec![BigInt::one(), BigInt::zero()]])?;
    let t1 = Lattice::zero(2);
    let t2 = Lattice::new(2, vec![vec![BigInt::zero(), BigInt::from(p)]])?;
    let form = LinearForm::new(vec![BigRational::zero(), BigRational::new(BigInt::one(), BigInt::from(p))]);
    GradedSandwich::new(s, vec![t0, t1, t2], form, Element::from_i64(&[1, 0]), None)
}

/// The committed negative-control fixture text.
pub fn negative_control_json(p: u64) -> Result<String> {
    let mut doc = negative_control(p)?.to_doc();
    doc.note = Some(format!("negative control: S = Z[y]/(y^2), T = Z1 + Z{p}y, t(y) = 1/{p}, xi = 1"));
    Ok(serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n")
}
