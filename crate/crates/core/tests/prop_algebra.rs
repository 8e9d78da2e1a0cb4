//! Structural invariants of every algebra the crate can build, rechecked
//! entry by entry rather than through `validate`.

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use maxsym_core::algebra::builders::{
    direct_product, square_zero_plane, trivial_extension, truncated_polynomial, upper_triangular,
};
use maxsym_core::quiver::{canonical_a_ell, canonical_a_tilde_ell};
use maxsym_core::schur::matrix_superalgebra;
use maxsym_core::{AlgebraData, BaseRing, Element, IdempotentDecomposition, Lattice};

fn zoo(k: usize) -> AlgebraData {
    let z = BaseRing::Integers;
    match k {
        0..=3 => canonical_a_ell(k + 1, z).unwrap(),
        4..=7 => canonical_a_tilde_ell(k - 3, z).unwrap(),
        8 => upper_triangular(z).unwrap(),
        9 => trivial_extension(&upper_triangular(z).unwrap(), 2).unwrap(),
        10 => square_zero_plane(z).unwrap(),
        11 => truncated_polynomial(z, 4, 1).unwrap(),
        12 => direct_product(&canonical_a_ell(2, z).unwrap(), &truncated_polynomial(z, 3, 1).unwrap()).unwrap(),
        13 => matrix_superalgebra(&canonical_a_tilde_ell(1, z).unwrap(), 2).unwrap(),
        _ => unreachable!(),
    }
}

const ZOO: usize = 14;

fn basis(a: &AlgebraData, i: usize) -> Vec<BigInt> {
    Element::basis(a.rank(), i).coeffs
}

fn mul(a: &AlgebraData, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    a.multiply(x, y).unwrap().coeffs
}

fn by_label(a: &AlgebraData, l: &str) -> Vec<BigInt> {
    basis(a, a.index_of(l).unwrap_or_else(|| panic!("no basis element {l}")))
}

fn structure_holds(a: &AlgebraData) -> Result<(), TestCaseError> {
    let n = a.rank();
    let unit = a.unit().coeffs;
    for i in 0..n {
        let bi = basis(a, i);
        prop_assert_eq!(mul(a, &unit, &bi), a.normalize(bi.clone()));
        prop_assert_eq!(mul(a, &bi, &unit), a.normalize(bi.clone()));
        for j in 0..n {
            let bij = mul(a, &bi, &basis(a, j));
            for (k, c) in bij.iter().enumerate() {
                if !c.is_zero() {
                    prop_assert_eq!(a.degree(k), a.degree(i) + a.degree(j));
                    prop_assert_eq!(a.parity(k), a.parity(i).add(a.parity(j)));
                }
            }
            for k in 0..n {
                let bk = basis(a, k);
                prop_assert_eq!(mul(a, &bij, &bk), mul(a, &bi, &mul(a, &basis(a, j), &bk)));
            }
        }
    }
    Ok(())
}

fn element(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-9i64..=9, n)
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| x.into()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_built_algebra_is_associative_unital_and_graded(k in 0..ZOO, p in prop::sample::select(vec![2u64, 3, 5])) {
        let a = zoo(k);
        structure_holds(&a)?;
        structure_holds(&a.reduce_mod_p(p).unwrap())?;
    }

    #[test]
    fn reduction_commutes_with_multiplication(
        (k, x, y) in (0..ZOO).prop_flat_map(|k| { let n = zoo(k).rank(); (Just(k), element(n), element(n)) }),
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
    ) {
        let a = zoo(k);
        let r = a.reduce_mod_p(p).unwrap();
        let (x, y) = (big(&x), big(&y));
        let lhs = r.normalize(mul(&a, &x, &y));
        let rhs = mul(&r, &r.normalize(x), &r.normalize(y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn centre_commutes_with_everything(k in 0..ZOO) {
        let a = zoo(k);
        for z in a.center_basis() {
            for i in 0..a.rank() {
                let b = basis(&a, i);
                prop_assert_eq!(mul(&a, &z.coeffs, &b), mul(&a, &b, &z.coeffs));
            }
        }
    }
}

/// Vertex idempotents as a decomposition; their Peirce corners tile the algebra.
#[test]
fn vertex_idempotents_give_complete_peirce_decompositions() {
    for ell in 1..=5 {
        for (a, prefix) in [
            (canonical_a_ell(ell, BaseRing::Integers).unwrap(), "e_"),
            (canonical_a_tilde_ell(ell, BaseRing::Integers).unwrap(), "e_"),
        ] {
            let parts: Vec<Element> = (0..a.rank())
                .filter(|&i| a.labels()[i].starts_with(prefix))
                .map(|i| Element::basis(a.rank(), i))
                .collect();
            assert_eq!(parts.len(), ell);
            let d = IdempotentDecomposition::new(&a, parts.clone()).unwrap();
            let mut total = 0;
            let mut gens = Vec::new();
            for e in d.parts() {
                for f in d.parts() {
                    let corner = a.peirce_corner(&e.coeffs, &f.coeffs).unwrap();
                    total += corner.rank();
                    gens.extend(corner.as_lattice().unwrap().basis().to_vec());
                }
            }
            // Ranks add up and the corners together generate everything, so the sum is direct.
            assert_eq!(total, a.rank());
            assert_eq!(Lattice::new(a.rank(), gens).unwrap(), Lattice::full(a.rank()));
        }
    }
}

#[test]
fn socle_relations_in_a_ell() {
    for ell in 2..=5 {
        let a = canonical_a_ell(ell, BaseRing::Integers).unwrap();
        for j in 1..=ell {
            let c = by_label(&a, &format!("c_{j}"));
            if j > 1 {
                let left = mul(&a, &by_label(&a, &format!("a_{{{j},{}}}", j - 1)), &by_label(&a, &format!("a_{{{},{j}}}", j - 1)));
                assert_eq!(left, c, "c_{j} via j-1");
            }
            if j < ell {
                let right = mul(&a, &by_label(&a, &format!("a_{{{j},{}}}", j + 1)), &by_label(&a, &format!("a_{{{},{j}}}", j + 1)));
                assert_eq!(right, c, "c_{j} via j+1");
            }
        }
    }
}

#[test]
fn a_tilde_relations() {
    for ell in 2..=5 {
        let a = canonical_a_tilde_ell(ell, BaseRing::Integers).unwrap();
        let u = by_label(&a, "u");
        let u2 = mul(&a, &u, &u);
        assert_eq!(u2, mul(&a, &by_label(&a, "a_{0,1}"), &by_label(&a, "a_{1,0}")));
        assert_eq!(u2, by_label(&a, "c_0"));
        let deg1: Vec<usize> = a.degree_indices(1);
        for &x in &deg1 {
            for &y in &deg1 {
                for &z in &deg1 {
                    let p = mul(&a, &mul(&a, &basis(&a, x), &basis(&a, y)), &basis(&a, z));
                    assert!(p.iter().all(Zero::is_zero));
                }
            }
        }
    }
    // Ã_1 is the truncated polynomial ring in an odd u of degree 1.
    let a = canonical_a_tilde_ell(1, BaseRing::Integers).unwrap();
    let u = by_label(&a, "u");
    assert_eq!(mul(&a, &u, &u), by_label(&a, "c_0"));
    assert!(mul(&a, &mul(&a, &u, &u), &u).iter().all(Zero::is_zero));
}
