//! Contracts of the normal forms and lattice operations, checked against
//! small test-local routines that share no code with the library.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use maxsym_core::linalg::{dual_lattice, elementary_divisors, hermite_form, kernel_lattice, smith_form};
use maxsym_core::{Lattice, QMatrix, RationalLattice, ZMatrix};

type Rows = Vec<Vec<i64>>;

fn to_z(rows: &Rows, cols: usize) -> ZMatrix {
    ZMatrix::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i][j]))
}

fn entries(m: &ZMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Schoolbook product.
fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum())
                .collect()
        })
        .collect()
}

/// Row reduction over Q. Returns the rank and the determinant (meaningful when square).
fn gauss(rows: &[Vec<BigInt>]) -> (usize, BigRational) {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut det = BigRational::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            det = BigRational::zero();
            continue;
        };
        if p != r {
            m.swap(p, r);
            det = -det;
        }
        let piv = m[r][c].clone();
        det *= &piv;
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &piv;
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    if r < m.len() {
        det = BigRational::zero();
    }
    (r, det)
}

fn det(rows: &[Vec<BigInt>]) -> BigInt {
    gauss(rows).1.to_integer()
}

/// A primitive integer vector spanning the same line as a rational kernel vector.
fn kernel_vectors(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    // Solve x * m = 0, i.e. m^T x^T = 0, by brute reduction of m^T.
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigRational>> = (0..cols)
        .map(|j| (0..n).map(|i| BigRational::from_integer(rows[i][j].clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        let piv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x /= &piv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); n];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = v.iter().map(|x| (x * &den).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            ints.into_iter().map(|x| x / &g).collect()
        })
        .collect()
}

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = (Rows, usize)> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        (proptest::collection::vec(proptest::collection::vec(-bound..=bound, c), r), Just(c))
    })
}

fn square(max_dim: usize, bound: i64) -> impl Strategy<Value = Rows> {
    (1..=max_dim).prop_flat_map(move |n| proptest::collection::vec(proptest::collection::vec(-bound..=bound, n), n))
}

/// Hermite shape, rechecked by hand: staircase of positive pivots, entries above
/// each pivot reduced into `[0, pivot)`, zero rows last.
fn hermite_shape(h: &[Vec<BigInt>]) -> bool {
    let mut last: Option<usize> = None;
    let mut zero_seen = false;
    for (i, row) in h.iter().enumerate() {
        match row.iter().position(|x| !x.is_zero()) {
            None => zero_seen = true,
            Some(c) => {
                if zero_seen || last.is_some_and(|l| c <= l) || !row[c].is_positive() {
                    return false;
                }
                if h[..i].iter().any(|above| above[c].is_negative() || above[c] >= row[c]) {
                    return false;
                }
                last = Some(c);
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hermite_contract((rows, cols) in matrix(8, 30)) {
        let m = to_z(&rows, cols);
        let (h, u) = hermite_form(&m);
        let (h, u) = (entries(&h), entries(&u));
        prop_assert_eq!(mul(&u, &entries(&m)), h.clone());
        prop_assert!(det(&u).abs().is_one());
        prop_assert!(hermite_shape(&h));
        // Row lattice is unchanged, so the rank is too.
        prop_assert_eq!(gauss(&h).0, gauss(&entries(&m)).0);
    }

    #[test]
    fn smith_contract((rows, cols) in matrix(8, 30)) {
        let m = to_z(&rows, cols);
        let (d, u, v) = smith_form(&m);
        let (d, u, v) = (entries(&d), entries(&u), entries(&v));
        prop_assert_eq!(mul(&mul(&u, &entries(&m)), &v), d.clone());
        prop_assert!(det(&u).abs().is_one());
        prop_assert!(det(&v).abs().is_one());
        let diag: Vec<BigInt> = (0..rows.len().min(cols)).map(|i| d[i][i].clone()).collect();
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                prop_assert!(i == j || x.is_zero());
            }
        }
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
    }

    #[test]
    fn divisors_multiply_to_determinant(rows in square(7, 12)) {
        let n = rows.len();
        let m = to_z(&rows, n);
        let d = det(&entries(&m));
        prop_assume!(!d.is_zero());
        let prod: BigInt = elementary_divisors(&m).iter().product();
        prop_assert_eq!(prod, d.abs());
    }

    #[test]
    fn kernel_is_saturated_and_complete((rows, cols) in matrix(7, 6)) {
        let m = to_z(&rows, cols);
        let k = kernel_lattice(&m);
        let mrows = entries(&m);
        let (rank_m, _) = gauss(&mrows);
        prop_assert_eq!(k.rank(), rows.len() - rank_m);
        for b in k.basis() {
            prop_assert!(mul(&[b.clone()], &mrows)[0].iter().all(Zero::is_zero));
        }
        // Primitive kernel vectors found independently lie in k, as does their primitive sum.
        let vs = kernel_vectors(&mrows);
        for v in &vs {
            prop_assert!(k.contains(v));
        }
        if vs.len() >= 2 {
            let s: Vec<BigInt> = vs[0].iter().zip(&vs[1]).map(|(a, b)| a * 3 + b * 5).collect();
            let g = s.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let s: Vec<BigInt> = s.into_iter().map(|x| x / &g).collect();
            prop_assert!(k.contains(&s));
        }
    }

    #[test]
    fn dual_is_an_involution_and_reverses_inclusion(
        (n, gens, extra, ops) in (2usize..=5).prop_flat_map(|n| (
            Just(n),
            proptest::collection::vec(proptest::collection::vec(-6i64..=6, n), n),
            proptest::collection::vec(-6i64..=6, n),
            proptest::collection::vec((0..n, 0..n, -3i64..=3), 0..8),
        ))
    ) {
        let rows: Vec<Vec<BigInt>> = gens.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        prop_assume!(!det(&rows).is_zero());
        // Unimodular symmetric gram G = E E^T with E a product of elementary row operations.
        let mut e: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
        for (i, j, c) in ops {
            if i != j {
                let src = e[j].clone();
                for (x, y) in e[i].iter_mut().zip(src) {
                    *x += y * c;
                }
            }
        }
        let et: Vec<Vec<BigInt>> = (0..n).map(|j| (0..n).map(|i| e[i][j].clone()).collect()).collect();
        let g = mul(&e, &et);
        let gram = QMatrix::from_fn(n, n, |i, j| BigRational::from_integer(g[i][j].clone()));
        let ambient = Lattice::full(n);
        let m = Lattice::new(n, rows.clone()).unwrap().to_rational();
        let dual = dual_lattice(&m, &gram, &ambient).unwrap();
        prop_assert_eq!(dual_lattice(&dual, &gram, &ambient).unwrap(), m.clone());
        // Every dual vector pairs integrally with every generator.
        for x in dual.rational_basis() {
            for y in &rows {
                let v: BigRational = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| &x[i] * BigRational::from_integer(&g[i][j] * &y[j]))
                    .sum();
                prop_assert!(v.is_integer());
            }
        }
        let mut bigger_rows = rows;
        bigger_rows.push(extra.iter().map(|&x| x.into()).collect());
        let bigger = Lattice::new(n, bigger_rows).unwrap().to_rational();
        let bigger_dual = dual_lattice(&bigger, &gram, &ambient).unwrap();
        prop_assert!(bigger_dual.is_sublattice_of(&dual));
        // A unimodular gram makes Z^n self-dual.
        let full: RationalLattice = ambient.to_rational();
        prop_assert_eq!(dual_lattice(&full, &gram, &ambient).unwrap(), full);
    }
}
