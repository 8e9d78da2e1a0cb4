//! Structure-constant algebras: validation, products, center, Peirce corners.

pub mod builders;
mod data;
pub mod json;
mod structure;

pub use data::{AlgebraData, AlgebraParts, Element, Parity, Provenance};
pub use json::AlgebraDoc;
pub(crate) use structure::left_kernel;
pub use structure::{peirce_is_complete, IdempotentDecomposition};

#[cfg(test)]
mod tests {
    use super::builders::*;
    use super::*;
    use crate::error::Error;
    use crate::linalg::{BaseRing, Lattice};

    fn el(xs: &[i64]) -> Element {
        Element::from_i64(xs)
    }

    #[test]
    fn dual_numbers_square_to_zero() {
        let a = truncated_polynomial(BaseRing::Integers, 2, 2).unwrap();
        assert_eq!(a.multiply(&el(&[0, 1]), &el(&[0, 1])).unwrap(), el(&[0, 0]));
        assert_eq!(a.multiply(&a.unit(), &el(&[0, 1])).unwrap(), el(&[0, 1]));
        assert!(a.multiply(&el(&[1]), &el(&[0, 1])).is_err());
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // e*e = e, x*x = e, e unit, but also declare x*e = 0: unit law breaks.
        let parts = AlgebraParts {
            base: BaseRing::Integers,
            labels: vec!["e".into(), "x".into()],
            degrees: vec![0, 0],
            parities: vec![Parity::Even; 2],
            unit: vec![1.into(), 0.into()],
            structure_constants: vec![(0, 0, 0, 1.into()), (0, 1, 1, 1.into()), (1, 1, 0, 1.into())],
            top_degree: None,
            provenance: None,
        };
        assert_eq!(AlgebraData::new(parts), Err(Error::UnitLaw(1)));
        // Grading violation: x in degree 1 with x*x = e.
        let parts = AlgebraParts {
            base: BaseRing::Integers,
            labels: vec!["e".into(), "x".into()],
            degrees: vec![0, 1],
            parities: vec![Parity::Even, Parity::Odd],
            unit: vec![1.into(), 0.into()],
            structure_constants: vec![
                (0, 0, 0, 1.into()),
                (0, 1, 1, 1.into()),
                (1, 0, 1, 1.into()),
                (1, 1, 0, 1.into()),
            ],
            top_degree: None,
            provenance: None,
        };
        assert_eq!(AlgebraData::new(parts), Err(Error::Grading(1, 1, 0)));
    }

    #[test]
    fn associativity_violation_is_reported() {
        // Basis 1, x, y with x*x = y, x*y = 0, y*x = y: (x x) x = y but x (x x) = 0.
        let parts = AlgebraParts {
            base: BaseRing::Integers,
            labels: vec!["1".into(), "x".into(), "y".into()],
            degrees: vec![0; 3],
            parities: vec![Parity::Even; 3],
            unit: vec![1.into(), 0.into(), 0.into()],
            structure_constants: vec![
                (0, 0, 0, 1.into()),
                (0, 1, 1, 1.into()),
                (1, 0, 1, 1.into()),
                (0, 2, 2, 1.into()),
                (2, 0, 2, 1.into()),
                (1, 1, 2, 1.into()),
                (2, 1, 2, 1.into()),
            ],
            top_degree: None,
            provenance: None,
        };
        assert!(matches!(AlgebraData::new(parts), Err(Error::Associativity(..))));
    }

    #[test]
    fn center_of_upper_triangular_is_scalars() {
        let t = upper_triangular(BaseRing::Integers).unwrap();
        let z = t.center_basis();
        assert_eq!(z, vec![el(&[1, 1, 0])]);
        let poly = truncated_polynomial(BaseRing::PrimeField(3), 3, 1).unwrap();
        assert_eq!(poly.center_basis().len(), 3);
    }

    #[test]
    fn reduction_mod_p_wraps_constants() {
        let parts = AlgebraParts {
            base: BaseRing::Integers,
            labels: vec!["1".into(), "x".into()],
            degrees: vec![0, 0],
            parities: vec![Parity::Even; 2],
            unit: vec![1.into(), 0.into()],
            structure_constants: vec![(0, 0, 0, 1.into()), (0, 1, 1, 1.into()), (1, 0, 1, 1.into()), (1, 1, 1, 6.into())],
            top_degree: None,
            provenance: None,
        };
        let a = AlgebraData::new(parts).unwrap();
        let r = a.reduce_mod_p(3).unwrap();
        assert!(r.mul_basis(1, 1).is_empty());
        assert!(a.reduce_mod_p(4).is_err());
        assert!(r.reduce_mod_p(3).is_err());
    }

    #[test]
    fn peirce_corners_of_a_product() {
        let a = direct_product(
            &ground_ring(BaseRing::Integers).unwrap(),
            &truncated_polynomial(BaseRing::Integers, 2, 0).unwrap(),
        )
        .unwrap();
        let e = el(&[1, 0, 0]);
        let f = el(&[0, 1, 0]);
        assert!(a.peirce_corner(&e, &f).unwrap().is_zero());
        assert_eq!(a.peirce_corner(&f, &f).unwrap().rank(), 2);
        assert_eq!(a.peirce_corner(&a.unit(), &a.unit()).unwrap().rank(), 3);
        assert_eq!(a.peirce_corner(&el(&[0, 0, 1]), &e), Err(Error::NotIdempotent));
        let d = IdempotentDecomposition::new(&a, vec![e, f]).unwrap();
        assert!(peirce_is_complete(&a, &d).unwrap());
        assert!(IdempotentDecomposition::new(&a, vec![el(&[1, 0, 0])]).is_err());
        let (corner, basis) = a.corner_algebra(&el(&[0, 1, 0])).unwrap();
        assert_eq!(corner.rank(), 2);
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn graded_components() {
        let a = truncated_polynomial(BaseRing::Integers, 2, 2).unwrap();
        assert_eq!(a.graded_component(0).unwrap(), Lattice::coordinate(2, [0]));
        assert_eq!(a.graded_component(1).unwrap(), Lattice::zero(2));
        assert_eq!(a.graded_component(3), Err(Error::DegreeOutOfRange(3, 2)));
        assert_eq!(a.graded_ranks(), vec![1, 0, 1]);
    }

    #[test]
    fn json_round_trip() {
        let a = upper_triangular(BaseRing::PrimeField(5)).unwrap();
        let back = AlgebraData::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
        let z = truncated_polynomial(BaseRing::Integers, 3, 1).unwrap();
        assert_eq!(AlgebraData::from_json(&z.to_json()).unwrap(), z);
    }
}
