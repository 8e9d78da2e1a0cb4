//! Sandwich checker properties: exact index primes, monotonicity of condition
//! (a), duality reversal, and agreement between the checker and the oracle.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use maxsym_core::algebra::builders::truncated_polynomial;
use maxsym_core::maxsym::search::search_positive_fixture;
use maxsym_core::maxsym::{
    check_condition_a, dual_in_degree, index_primes, intermediate_oracle, run_main_theorem_check,
    DEFAULT_SUBGROUP_CAP,
};
use maxsym_core::{BaseRing, CheckOptions, Element, GradedSandwich, Lattice, LinearForm};

fn fixture() -> &'static GradedSandwich {
    static F: OnceLock<GradedSandwich> = OnceLock::new();
    F.get_or_init(|| search_positive_fixture(CheckOptions::default()).unwrap().unwrap().sandwich)
}

/// `S = Z[y]/(y^3)` with `y` in degree 1; `T = Z ⊕ Z a y ⊕ Z b y^2`, closed when `b | a^2`.
fn cubic(a: i64, b: i64, form_denominator: i64) -> GradedSandwich {
    let s = truncated_polynomial(BaseRing::Integers, 3, 1).unwrap();
    let row = |v: [i64; 3]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let comps = vec![
        Lattice::new(3, vec![row([1, 0, 0])]).unwrap(),
        Lattice::new(3, vec![row([0, a, 0])]).unwrap(),
        Lattice::new(3, vec![row([0, 0, b])]).unwrap(),
    ];
    let zero = BigRational::from_integer(0.into());
    let form = LinearForm::new(vec![zero.clone(), zero, BigRational::new(1.into(), form_denominator.into())]);
    GradedSandwich::new(s, comps, form, Element::from_i64(&[1, 0, 0]), None).unwrap()
}

fn cubic_params() -> impl Strategy<Value = (i64, i64, i64)> {
    (1i64..=6).prop_flat_map(|a| {
        let sq = a * a;
        let divisors: Vec<i64> = (1..=sq).filter(|d| sq % d == 0).collect();
        (Just(a), prop::sample::select(divisors.clone()), prop::sample::select(divisors))
    })
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Rank of integer rows mod q, by elimination.
fn rank_mod(rows: &[Vec<BigInt>], q: u64) -> usize {
    let qb = BigInt::from(q);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| u64::try_from(((x % &qb) + &qb) % &qb).unwrap()).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(r, rank);
        let iv = (1..q).find(|b| m[rank][c] * b % q == 1).unwrap();
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * iv % q;
                for j in 0..cols {
                    m[r][j] = (m[r][j] + q * q - f * m[rank][j] % q) % q;
                }
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn index_primes_are_exactly_the_ramified_ones((a, b, f) in cubic_params()) {
        let sw = cubic(a, b, f);
        let primes = index_primes(&sw).unwrap();
        // T is full rank in S, which has the identity basis, so locally T = S iff T's basis is invertible mod q.
        let t = sw.t_basis();
        for q in (2u64..=31).filter(|&q| is_prime(q)) {
            let equal_locally = rank_mod(&t, q) == 3;
            prop_assert_eq!(primes.contains(&q), !equal_locally, "q = {}", q);
        }
        let ab = (a * b) as u64;
        prop_assert!(primes.iter().all(|&q| ab % q == 0));
    }

    #[test]
    fn checker_and_oracle_agree_on_cubic_sandwiches((a, b, f) in cubic_params()) {
        let sw = cubic(a, b, f);
        let opts = CheckOptions::default();
        let r = run_main_theorem_check(&sw, opts).unwrap();
        for p in index_primes(&sw).unwrap() {
            let o = intermediate_oracle(&sw, p, DEFAULT_SUBGROUP_CAP, opts).unwrap();
            prop_assert_eq!(o.inconclusive, 0);
            prop_assert!(o.consistent);
            if r.is_certified() {
                prop_assert!(o.symmetric_proper.is_empty());
            }
        }
    }

    #[test]
    fn condition_a_is_monotone(
        small in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 1..=3),
        more in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 1..=2),
    ) {
        let sw = fixture();
        let top = sw.t_top();
        let combine = |cs: &[Vec<i64>]| -> Vec<Vec<BigInt>> {
            cs.iter()
                .map(|c| {
                    (0..top.ambient_rank())
                        .map(|j| c.iter().zip(top.basis()).map(|(k, row)| BigInt::from(*k) * &row[j]).sum())
                        .collect()
                })
                .collect()
        };
        let u = Lattice::new(top.ambient_rank(), combine(&small)).unwrap();
        let mut bigger_gens = combine(&small);
        bigger_gens.extend(combine(&more));
        let bigger = Lattice::new(top.ambient_rank(), bigger_gens).unwrap();
        if check_condition_a(sw, Some(&u)).unwrap().pass {
            prop_assert!(check_condition_a(sw, Some(&bigger)).unwrap().pass);
        }
    }

    #[test]
    fn duality_reverses_inclusion(
        gens in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 3..=4),
    ) {
        let sw = fixture();
        let sn = sw.s_component(2);
        // Sublattices of S^2 in its own coordinates, pushed into the ambient.
        let rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|c| {
                (0..sn.ambient_rank())
                    .map(|j| c.iter().zip(sn.basis()).map(|(k, row)| BigInt::from(*k) * &row[j]).sum())
                    .collect()
            })
            .collect();
        let m = Lattice::new(sn.ambient_rank(), rows).unwrap();
        prop_assume!(m.rank() == sn.rank());
        let dm = dual_in_degree(sw, &m.to_rational(), 0).unwrap();
        let ds = dual_in_degree(sw, &sn.to_rational(), 0).unwrap();
        prop_assert!(ds.is_sublattice_of(&dm));
        prop_assert_eq!(dual_in_degree(sw, &dm, 2).unwrap(), m.to_rational());
    }
}
