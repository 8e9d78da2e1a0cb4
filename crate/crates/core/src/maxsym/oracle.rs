use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::check::{index_primes, is_full_rank, run_main_theorem_check, CheckOptions};
use super::sandwich::GradedSandwich;
use super::ser;
use crate::error::{Error, Result};
use crate::forms::{is_symmetric_algebra, SymmetricVerdict, DEFAULT_FORM_CAP};
use crate::linalg::field::{self, Rationals};
use crate::linalg::ring::valuation;
use crate::linalg::{dual_lattice, smith_form, Lattice, Matrix, QMatrix, RationalLattice};

pub const DEFAULT_SUBGROUP_CAP: u64 = 1 << 10;

/// The three duals inside `S⁰ ⊗ Q` under `(x, y) = t(xy)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualObjects {
    /// Dual of `T^N`; equals `S⁰` when the form is perfect on `T⁰ × T^N`.
    pub t_dual: RationalLattice,
    /// Dual of `S^N`.
    pub s_dual: RationalLattice,
    /// Dual of the supplied `C^(N)`.
    pub c_dual: RationalLattice,
    /// `s_dual ⊆ c_dual ⊆ S⁰`.
    pub chain_holds: bool,
    pub t_dual_is_s0: bool,
    /// `[S⁰ : c_dual]` and `[C^(N) : T^N]`; duality makes them equal.
    pub index_s0_over_c_dual: Option<BigRational>,
    pub index_c_over_t: Option<BigRational>,
    /// `[c_dual : s_dual]` and `[S^N : C^(N)]`.
    pub index_c_dual_over_s_dual: Option<BigRational>,
    pub index_s_over_c: Option<BigRational>,
}

/// `G[i][j] = t(b_i b_j)` on `S` over Q.
pub fn pairing_gram(sw: &GradedSandwich) -> QMatrix {
    let s = sw.s();
    let n = s.rank();
    let mut g = Matrix::filled(n, n, BigRational::zero());
    for (i, j, k, c) in s.structure_constants() {
        g[(i, j)] += &sw.t_form().coeffs[k] * BigRational::from_integer(c.clone());
    }
    g
}

/// Dual of `m` inside `S^degree ⊗ Q`.
pub fn dual_in_degree(sw: &GradedSandwich, m: &RationalLattice, degree: u32) -> Result<RationalLattice> {
    dual_lattice(m, &pairing_gram(sw), &sw.s_component(degree))
}

pub fn dual_lattice_objects(sw: &GradedSandwich, c_n: &Lattice) -> Result<DualObjects> {
    let top = sw.top_degree();
    let s_n = sw.s_component(top);
    if !sw.t_top().is_sublattice_of(c_n) || !c_n.is_sublattice_of(&s_n) {
        return Err(Error::InvalidSandwich("C^(N) must sit between T^N and S^N".into()));
    }
    let gram = pairing_gram(sw);
    let s0 = sw.s_component(0);
    let dual = |m: &Lattice| dual_lattice(&m.to_rational(), &gram, &s0);
    let t_dual = dual(sw.t_top())?;
    let s_dual = dual(&s_n)?;
    let c_dual = dual(c_n)?;
    let s0q = s0.to_rational();
    let rat = |x: BigInt| BigRational::from_integer(x);
    Ok(DualObjects {
        chain_holds: s_dual.is_sublattice_of(&c_dual) && c_dual.is_sublattice_of(&s0q),
        t_dual_is_s0: t_dual == s0q,
        index_s0_over_c_dual: c_dual.index_in(&s0q),
        index_c_over_t: sw.t_top().index_in(c_n).map(rat),
        index_c_dual_over_s_dual: s_dual.index_in(&c_dual),
        index_s_over_c: c_n.index_in(&s_n).map(rat),
        t_dual,
        s_dual,
        c_dual,
    })
}

/// `S/T` localized at `p`: cyclic factors of order `p^a_i` generated by the
/// images of `generators[i]`.
#[derive(Clone, Debug)]
struct PPart {
    orders: Vec<u64>,
    generators: Vec<Vec<BigInt>>,
}

impl PPart {
    fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    fn decode(&self, mut code: u64) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&o| {
                let c = code % o;
                code /= o;
                c
            })
            .collect()
    }

    fn encode(&self, v: &[u64]) -> u64 {
        v.iter().zip(&self.orders).rev().fold(0, |acc, (&c, &o)| acc * o + c)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<u64> = x.iter().zip(&y).zip(&self.orders).map(|((a, b), o)| (a + b) % o).collect();
        self.encode(&s)
    }

    fn lift(&self, code: u64) -> Vec<BigInt> {
        let n = self.generators.first().map_or(0, Vec::len);
        let mut v = vec![BigInt::zero(); n];
        for (c, g) in self.decode(code).into_iter().zip(&self.generators) {
            for (vi, gi) in v.iter_mut().zip(g) {
                *vi += BigInt::from(c) * gi;
            }
        }
        v
    }
}

fn p_part(sw: &GradedSandwich, p: u64) -> Result<PPart> {
    let t = sw.t_lattice();
    let n = sw.s().rank();
    let (d, _, v) = smith_form(&t.basis_matrix());
    // rowspace(T) = rowspace(D v^-1): S/T is generated by the rows f_i of v^-1.
    let vinv = field::inverse(&Rationals, &v.to_rational())
        .ok_or_else(|| Error::Internal("Smith transform is singular".into()))?;
    let mut orders = Vec::new();
    let mut generators = Vec::new();
    for i in 0..n {
        let di = d[(i, i)].clone();
        let a = valuation(&di, p);
        if a == 0 {
            continue;
        }
        let pa = BigInt::from(p).pow(a);
        let cofactor = di.div_floor(&pa);
        orders.push(pa.to_u64().ok_or_else(|| Error::IndexTooLarge(pa.to_string(), u64::MAX))?);
        generators.push((0..n).map(|j| &cofactor * vinv[(i, j)].to_integer()).collect());
    }
    Ok(PPart { orders, generators })
}

/// Every subgroup of the p-part, each as a sorted list of element codes,
/// ordered by size and then lexicographically.
fn subgroups(pp: &PPart) -> Vec<Vec<u64>> {
    let size = pp.size();
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut queue = vec![vec![0u64]];
    seen.insert(vec![0]);
    while let Some(h) = queue.pop() {
        let members: BTreeSet<u64> = h.iter().copied().collect();
        for g in 0..size {
            if members.contains(&g) {
                continue;
            }
            // <H, g> = H + <g>.
            let mut multiples = vec![0u64];
            let mut m = g;
            while m != 0 {
                multiples.push(m);
                m = pp.add(m, g);
            }
            let mut next: BTreeSet<u64> = BTreeSet::new();
            for &x in &h {
                for &y in &multiples {
                    next.insert(pp.add(x, y));
                }
            }
            let next: Vec<u64> = next.into_iter().collect();
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    let mut out: Vec<Vec<u64>> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryAtPrime {
    pub prime: u64,
    pub verdict: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Intermediate {
    pub id: usize,
    /// `[C : T]`.
    pub index_over_t: u64,
    #[serde(serialize_with = "ser::lattice")]
    pub lattice: Lattice,
    pub is_subalgebra: bool,
    /// One verdict per index prime, for subalgebras only.
    pub symmetric: Vec<SymmetryAtPrime>,
    pub all_symmetric: bool,
    pub dual_chain_holds: bool,
    pub dual_indices_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub prime: u64,
    pub p_part_order: u64,
    pub cyclic_orders: Vec<u64>,
    pub subgroup_count: usize,
    pub intermediates: Vec<Intermediate>,
    /// Ids of intermediates `C ≠ T` that are subalgebras symmetric at every index prime.
    pub symmetric_proper: Vec<usize>,
    pub inconclusive: usize,
    pub theorem_certified: bool,
    /// False exactly when the theorem certified `T` and a symmetric proper `C` exists.
    pub consistent: bool,
}

impl OracleReport {
    pub fn exit_code(&self) -> i32 {
        if !self.consistent {
            1
        } else if self.inconclusive > 0 {
            2
        } else {
            0
        }
    }
}

/// Enumerates every lattice `T ⊆ C ⊆ S` with `C/T` a p-group, keeps the
/// subalgebras, and tests each `C mod q` for symmetry at every index prime `q`.
pub fn intermediate_oracle(
    sw: &GradedSandwich,
    p: u64,
    subgroup_cap: u64,
    opts: CheckOptions,
) -> Result<OracleReport> {
    if !is_full_rank(sw) {
        return Err(Error::InvalidSandwich("the oracle needs T of full rank".into()));
    }
    let pp = p_part(sw, p)?;
    let order = pp
        .orders
        .iter()
        .try_fold(1u64, |acc, &o| acc.checked_mul(o))
        .ok_or_else(|| Error::IndexTooLarge("overflow".into(), subgroup_cap))?;
    if order > subgroup_cap {
        return Err(Error::IndexTooLarge(order.to_string(), subgroup_cap));
    }
    let theorem = run_main_theorem_check(sw, opts)?;
    let primes = index_primes(sw)?;
    let s = sw.s();
    let t = sw.t_lattice();
    let s_top = sw.s_component(sw.top_degree());
    let groups = subgroups(&pp);
    let intermediates = groups
        .par_iter()
        .enumerate()
        .map(|(id, h)| {
            let c = Lattice::new(
                s.rank(),
                t.basis().iter().cloned().chain(h.iter().map(|&x| pp.lift(x))),
            )?;
            let is_subalgebra = c
                .basis()
                .iter()
                .all(|x| c.basis().iter().all(|y| c.contains(&s.mul_vec(x, y))));
            let mut symmetric = Vec::new();
            if is_subalgebra {
                let alg = s.sub_algebra(c.basis(), &s.unit())?;
                for &q in &primes {
                    let verdict = is_symmetric_algebra(&alg.reduce_mod_p(q)?, DEFAULT_FORM_CAP, opts.seed)?;
                    symmetric.push(SymmetryAtPrime {
                        prime: q,
                        verdict: verdict.label(),
                    });
                    if matches!(verdict, SymmetricVerdict::No { .. }) {
                        break;
                    }
                }
            }
            let all_symmetric = is_subalgebra && symmetric.iter().all(|v| v.verdict == "yes");
            let c_n = c.intersection(&s_top)?;
            let duals = dual_lattice_objects(sw, &c_n)?;
            let dual_indices_match = duals.index_s0_over_c_dual == duals.index_c_over_t
                && duals.index_c_dual_over_s_dual == duals.index_s_over_c;
            Ok(Intermediate {
                id,
                index_over_t: h.len() as u64,
                lattice: c,
                is_subalgebra,
                symmetric,
                all_symmetric,
                dual_chain_holds: duals.chain_holds && duals.t_dual_is_s0,
                dual_indices_match,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let symmetric_proper: Vec<usize> = intermediates
        .iter()
        .filter(|c| c.index_over_t > 1 && c.all_symmetric)
        .map(|c| c.id)
        .collect();
    let inconclusive = intermediates
        .iter()
        .flat_map(|c| &c.symmetric)
        .filter(|v| v.verdict == "inconclusive")
        .count();
    let theorem_certified = theorem.is_certified();
    Ok(OracleReport {
        prime: p,
        p_part_order: order,
        cyclic_orders: pp.orders.clone(),
        subgroup_count: groups.len(),
        consistent: !(theorem_certified && !symmetric_proper.is_empty()),
        intermediates,
        symmetric_proper,
        inconclusive,
        theorem_certified,
    })
}

#[cfg(test)]
mod tests {
    use num_traits::One;

    use super::*;

    #[test]
    fn subgroup_counts() {
        let make = |orders: Vec<u64>| PPart {
            generators: vec![vec![BigInt::one()]; orders.len()],
            orders,
        };
        // Z/p has 2 subgroups, (Z/p)^2 has p + 3, Z/p^2 has 3, Z/4 x Z/2 has 8.
        assert_eq!(subgroups(&make(vec![3])).len(), 2);
        assert_eq!(subgroups(&make(vec![2, 2])).len(), 5);
        assert_eq!(subgroups(&make(vec![3, 3])).len(), 6);
        assert_eq!(subgroups(&make(vec![4])).len(), 3);
        assert_eq!(subgroups(&make(vec![4, 2])).len(), 8);
        assert_eq!(subgroups(&make(vec![2, 2, 2])).len(), 16);
        assert_eq!(subgroups(&make(vec![])).len(), 1);
    }
}
