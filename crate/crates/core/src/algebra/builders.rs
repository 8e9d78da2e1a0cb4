//! Small hand-built algebras used as test beds and fixture ingredients.

use num_bigint::BigInt;
use num_traits::One;

use super::data::{AlgebraData, AlgebraParts, Parity};
use crate::error::{Error, Result};
use crate::linalg::BaseRing;

fn one() -> BigInt {
    BigInt::one()
}

/// The base ring itself as a rank-one algebra.
pub fn ground_ring(base: BaseRing) -> Result<AlgebraData> {
    truncated_polynomial(base, 1, 0)
}

/// `base[x]/(x^m)` with basis `1, x, ..., x^{m-1}` and `x` in degree `x_degree`.
/// Parity is degree mod 2.
pub fn truncated_polynomial(base: BaseRing, m: usize, x_degree: u32) -> Result<AlgebraData> {
    if m == 0 {
        return Err(Error::InvalidAlgebra("x^0 = 0 kills the unit".into()));
    }
    let mut sc = Vec::new();
    for i in 0..m {
        for j in 0..m - i {
            sc.push((i, j, i + j, one()));
        }
    }
    let mut unit = vec![BigInt::from(0); m];
    unit[0] = one();
    let degrees: Vec<u32> = (0..m as u32).map(|i| i * x_degree).collect();
    AlgebraData::new(AlgebraParts {
        base,
        labels: (0..m)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect(),
        parities: degrees.iter().map(|&d| Parity::from_bit((d % 2) as u8)).collect(),
        degrees,
        unit,
        structure_constants: sc,
        top_degree: None,
        provenance: None,
    })
}

/// Upper-triangular 2x2 matrices: basis `e1 = E11`, `e2 = E22`, `a = E12`, all degree 0.
pub fn upper_triangular(base: BaseRing) -> Result<AlgebraData> {
    AlgebraData::new(AlgebraParts {
        base,
        labels: vec!["e1".into(), "e2".into(), "a".into()],
        degrees: vec![0; 3],
        parities: vec![Parity::Even; 3],
        unit: vec![one(), one(), BigInt::from(0)],
        structure_constants: vec![
            (0, 0, 0, one()),
            (1, 1, 1, one()),
            (0, 2, 2, one()),
            (2, 1, 2, one()),
        ],
        top_degree: None,
        provenance: None,
    })
}

/// `base[x, y]/(x, y)^2`, the local algebra with a two-dimensional square-zero radical.
pub fn square_zero_plane(base: BaseRing) -> Result<AlgebraData> {
    AlgebraData::new(AlgebraParts {
        base,
        labels: vec!["1".into(), "x".into(), "y".into()],
        degrees: vec![0, 1, 1],
        parities: vec![Parity::Even, Parity::Odd, Parity::Odd],
        unit: vec![one(), BigInt::from(0), BigInt::from(0)],
        structure_constants: vec![(0, 0, 0, one()), (0, 1, 1, one()), (1, 0, 1, one()), (0, 2, 2, one()), (2, 0, 2, one())],
        top_degree: None,
        provenance: None,
    })
}

/// `a x b` with the basis of `a` first.
pub fn direct_product(a: &AlgebraData, b: &AlgebraData) -> Result<AlgebraData> {
    if a.base() != b.base() {
        return Err(Error::InvalidAlgebra("factors over different base rings".into()));
    }
    let off = a.rank();
    let mut sc: Vec<_> = a.structure_constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
    sc.extend(b.structure_constants().map(|(i, j, k, c)| (i + off, j + off, k + off, c.clone())));
    let mut unit = a.unit().coeffs;
    unit.extend(b.unit().coeffs);
    AlgebraData::new(AlgebraParts {
        base: a.base(),
        labels: a
            .labels()
            .iter()
            .map(|l| format!("{l}|0"))
            .chain(b.labels().iter().map(|l| format!("{l}|1")))
            .collect(),
        degrees: a.degrees().iter().chain(b.degrees()).copied().collect(),
        parities: a.parities().iter().chain(b.parities()).copied().collect(),
        unit,
        structure_constants: sc,
        top_degree: Some(a.top_degree().max(b.top_degree())),
        provenance: None,
    })
}

/// The trivial extension `a ⋉ a*` with `a` in degree 0 and the dual functionals
/// `b_i*` in degree `top`. Products: `(x, f)(y, g) = (xy, x g + f y)` with
/// `(x g)(z) = g(z x)` and `(f y)(z) = f(y z)`. Needs `a` concentrated in degree 0
/// and `top` even so that everything stays even.
pub fn trivial_extension(a: &AlgebraData, top: u32) -> Result<AlgebraData> {
    if a.degrees().iter().any(|&d| d != 0) || a.parities().iter().any(|p| p.is_odd()) {
        return Err(Error::InvalidAlgebra("trivial extension needs an even degree-0 algebra".into()));
    }
    if top == 0 || top % 2 == 1 {
        return Err(Error::InvalidAlgebra("dual part must sit in a positive even degree".into()));
    }
    let r = a.rank();
    let mut sc: Vec<_> = a.structure_constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
    // b_k b_i = Σ c b_j gives b_i · b_j* ∋ c b_k*; b_i b_k = Σ c b_j gives b_j* · b_i ∋ c b_k*.
    for (x, y, z, c) in a.structure_constants() {
        sc.push((y, r + z, r + x, c.clone()));
        sc.push((r + z, x, r + y, c.clone()));
    }
    let mut unit = a.unit().coeffs;
    unit.extend(std::iter::repeat_n(BigInt::from(0), r));
    AlgebraData::new(AlgebraParts {
        base: a.base(),
        labels: a
            .labels()
            .iter()
            .cloned()
            .chain(a.labels().iter().map(|l| format!("{l}*")))
            .collect(),
        degrees: std::iter::repeat_n(0, r).chain(std::iter::repeat_n(top, r)).collect(),
        parities: vec![Parity::Even; 2 * r],
        unit,
        structure_constants: sc,
        top_degree: Some(top),
        provenance: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::data::Element;
    use crate::forms::{is_symmetrizing, LinearForm};

    #[test]
    fn trivial_extension_acts_by_transpose() {
        let a = upper_triangular(BaseRing::Integers).unwrap();
        let t = trivial_extension(&a, 2).unwrap();
        let r = a.rank();
        assert_eq!(t.graded_ranks(), vec![3, 0, 3]);
        assert_eq!(t.labels()[3], "e1*");
        // (b_i f)(b_k) = f(b_k b_i) and (f b_i)(b_k) = f(b_i b_k), read off from A alone.
        for i in 0..r {
            for j in 0..r {
                let left = t.multiply(&Element::basis(2 * r, i).coeffs, &Element::basis(2 * r, r + j).coeffs).unwrap();
                let right = t.multiply(&Element::basis(2 * r, r + j).coeffs, &Element::basis(2 * r, i).coeffs).unwrap();
                for k in 0..r {
                    let ki = a.multiply(&Element::basis(r, k).coeffs, &Element::basis(r, i).coeffs).unwrap();
                    let ik = a.multiply(&Element::basis(r, i).coeffs, &Element::basis(r, k).coeffs).unwrap();
                    assert_eq!(left.coeffs[r + k], ki.coeffs[j], "b{i} b{j}* at b{k}");
                    assert_eq!(right.coeffs[r + k], ik.coeffs[j], "b{j}* b{i} at b{k}");
                }
            }
        }
        assert!(is_symmetrizing(&t, &LinearForm::from_i64(&[0, 0, 0, 1, 1, 0])).unwrap());
    }

    #[test]
    fn trivial_extension_rejects_odd_or_graded_input() {
        let a = upper_triangular(BaseRing::Integers).unwrap();
        assert!(trivial_extension(&a, 1).is_err());
        assert!(trivial_extension(&a, 0).is_err());
        let graded = truncated_polynomial(BaseRing::Integers, 2, 2).unwrap();
        assert!(trivial_extension(&graded, 2).is_err());
    }
}
