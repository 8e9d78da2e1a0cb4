//! Generalized Schur algebras `S^A(n, d) = (M_n(A)^{⊗d})^{S_d}` with the signed action.

mod invariants;
mod tensor;

pub use invariants::{
    distinct_row_sublattice, fixes, invariant_algebra, invariant_lattice, orbit_sum_lattice, orbit_sums,
    schur_algebra, weight_idempotents, Composition, SchurAlgebra,
};
pub use tensor::{
    act_on_basis, matrix_superalgebra, signed_tensor_power, symmetric_group_action, Permutation, TensorPower,
    DEFAULT_TENSOR_CAP,
};

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::algebra::builders::ground_ring;
    use crate::algebra::Element;
    use crate::error::Error;
    use crate::linalg::{BaseRing, ZMatrix};
    use crate::quiver::{canonical_a_ell, canonical_a_tilde_ell};

    fn z() -> crate::algebra::AlgebraData {
        ground_ring(BaseRing::Integers).unwrap()
    }

    #[test]
    fn matrix_superalgebra_ranks() {
        let a1 = canonical_a_ell(1, BaseRing::Integers).unwrap();
        let m = matrix_superalgebra(&a1, 2).unwrap();
        assert_eq!(m.rank(), 8);
        assert_eq!(m.graded_ranks(), vec![4, 0, 4]);
        assert_eq!(matrix_superalgebra(&a1, 1).unwrap().rank(), 2);
        assert_eq!(m.center_basis().len(), 2);
    }

    #[test]
    fn classical_schur_algebra_has_rank_ten() {
        let s = schur_algebra(&z(), 2, 2, DEFAULT_TENSOR_CAP).unwrap();
        assert_eq!(s.invariant.rank(), 10);
        let w = s.weight_idempotents().unwrap();
        let names: Vec<String> = w.iter().map(|(c, _)| c.to_string()).collect();
        assert_eq!(names, ["(2,0)", "(1,1)", "(0,2)"]);
        s.weight_decomposition().unwrap();
        let xi = s.xi_omega().unwrap();
        let (corner, _) = s.invariant.corner_algebra(&xi).unwrap();
        assert_eq!(corner.rank(), 2);
    }

    #[test]
    fn degree_one_is_the_matrix_algebra() {
        let a1 = canonical_a_ell(1, BaseRing::Integers).unwrap();
        let s = schur_algebra(&a1, 2, 1, DEFAULT_TENSOR_CAP).unwrap();
        assert_eq!(s.invariant.rank(), s.matrix_algebra.rank());
    }

    #[test]
    fn super_invariants_small() {
        let a1 = canonical_a_ell(1, BaseRing::Integers).unwrap();
        let s = schur_algebra(&a1, 1, 2, DEFAULT_TENSOR_CAP).unwrap();
        assert_eq!(s.invariant.graded_ranks(), vec![1, 0, 1, 0, 1]);
        let t1 = canonical_a_tilde_ell(1, BaseRing::Integers).unwrap();
        let s = schur_algebra(&t1, 1, 2, DEFAULT_TENSOR_CAP).unwrap();
        assert_eq!(s.invariant.rank(), 5);
        assert_eq!(orbit_sum_lattice(&s.tensor).unwrap(), s.invariant_lattice);
    }

    #[test]
    fn odd_transposition_carries_a_sign() {
        let t1 = canonical_a_tilde_ell(1, BaseRing::Integers).unwrap();
        let t = signed_tensor_power(&t1, 2, DEFAULT_TENSOR_CAP).unwrap();
        let swap = Permutation::adjacent(2, 0);
        let uu = t.encode(&[1, 1]);
        assert_eq!(act_on_basis(&t, &swap, uu), (uu, true));
        let eu = t.encode(&[0, 1]);
        assert_eq!(act_on_basis(&t, &swap, eu), (t.encode(&[1, 0]), false));
        assert_eq!(
            symmetric_group_action(&t, &Permutation::identity(2)).unwrap(),
            ZMatrix::identity(9)
        );
        // (u⊗e)(e⊗u) = u⊗u, while (e⊗u)(u⊗e) = -u⊗u.
        let ue = Element::basis(9, t.encode(&[1, 0]));
        let eu = Element::basis(9, t.encode(&[0, 1]));
        let a = t.algebra();
        let lhs = a.multiply(&ue, &eu).unwrap();
        let rhs = a.multiply(&eu, &ue).unwrap();
        assert_eq!(lhs[uu], BigInt::from(1));
        assert_eq!(rhs[uu], BigInt::from(-1));
    }

    #[test]
    fn action_is_a_homomorphism_of_groups() {
        let t1 = canonical_a_tilde_ell(1, BaseRing::Integers).unwrap();
        let t = signed_tensor_power(&t1, 3, DEFAULT_TENSOR_CAP).unwrap();
        let perms = Permutation::all(3);
        for s in &perms {
            for r in &perms {
                let lhs = symmetric_group_action(&t, &s.compose(r)).unwrap();
                let rhs = symmetric_group_action(&t, s)
                    .unwrap()
                    .mul(&symmetric_group_action(&t, r).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let a1 = canonical_a_ell(1, BaseRing::Integers).unwrap();
        let m = matrix_superalgebra(&a1, 2).unwrap();
        assert_eq!(signed_tensor_power(&m, 3, 100).unwrap_err(), Error::CapExceeded(512, 100));
    }

    #[test]
    fn compositions() {
        assert_eq!(Composition::all(3, 2).len(), 6);
        assert_eq!(Composition::omega(3, 2).unwrap(), Composition(vec![1, 1, 0]));
        assert!(Composition::omega(1, 2).is_err());
    }
}
