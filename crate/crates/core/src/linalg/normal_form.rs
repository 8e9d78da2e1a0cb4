//! Hermite and Smith normal forms over Z with unimodular transforms.
//!
//! Conventions: Hermite form is row style (`u * m = h`), pivots are positive
//! and entries above a pivot lie in `[0, pivot)`. Zero rows collect at the bottom.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::ZMatrix;

fn row_axpy(m: &mut ZMatrix, target: usize, source: usize, factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let s = &m[(source, j)];
        if !s.is_zero() {
            let v = factor * s;
            m[(target, j)] += v;
        }
    }
}

fn col_axpy(m: &mut ZMatrix, target: usize, source: usize, factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let s = &m[(i, source)];
        if !s.is_zero() {
            let v = factor * s;
            m[(i, target)] += v;
        }
    }
}

fn negate_row(m: &mut ZMatrix, i: usize) {
    for x in m.row_mut(i) {
        *x = -std::mem::take(x);
    }
}

fn negate_col(m: &mut ZMatrix, j: usize) {
    for i in 0..m.rows() {
        let x = &mut m[(i, j)];
        *x = -std::mem::take(x);
    }
}

/// Replaces rows (a, b) by (x*a + y*b, -(b_c/g)*a + (a_c/g)*b), a determinant-one step.
fn row_gcd_step(m: &mut ZMatrix, a: usize, b: usize, x: &BigInt, y: &BigInt, ra: &BigInt, rb: &BigInt) {
    for j in 0..m.cols() {
        let va = m[(a, j)].clone();
        let vb = m[(b, j)].clone();
        if va.is_zero() && vb.is_zero() {
            continue;
        }
        m[(a, j)] = x * &va + y * &vb;
        m[(b, j)] = ra * &vb - rb * &va;
    }
}

fn col_gcd_step(m: &mut ZMatrix, a: usize, b: usize, x: &BigInt, y: &BigInt, ra: &BigInt, rb: &BigInt) {
    for i in 0..m.rows() {
        let va = m[(i, a)].clone();
        let vb = m[(i, b)].clone();
        if va.is_zero() && vb.is_zero() {
            continue;
        }
        m[(i, a)] = x * &va + y * &vb;
        m[(i, b)] = ra * &vb - rb * &va;
    }
}

/// Zeroes `m[(b, col)]` using row `a`, mirroring every operation on `u`.
fn eliminate_row_entry(m: &mut ZMatrix, u: &mut ZMatrix, a: usize, b: usize, col: usize) {
    let pa = m[(a, col)].clone();
    let pb = m[(b, col)].clone();
    if pb.is_zero() {
        return;
    }
    if pa.is_zero() {
        m.swap_rows(a, b);
        u.swap_rows(a, b);
        return;
    }
    if pb.is_multiple_of(&pa) {
        let q = -(&pb / &pa);
        row_axpy(m, b, a, &q);
        row_axpy(u, b, a, &q);
        return;
    }
    let eg = pa.extended_gcd(&pb);
    let ra = &pa / &eg.gcd;
    let rb = &pb / &eg.gcd;
    row_gcd_step(m, a, b, &eg.x, &eg.y, &ra, &rb);
    row_gcd_step(u, a, b, &eg.x, &eg.y, &ra, &rb);
}

fn eliminate_col_entry(m: &mut ZMatrix, v: &mut ZMatrix, a: usize, b: usize, row: usize) {
    let pa = m[(row, a)].clone();
    let pb = m[(row, b)].clone();
    if pb.is_zero() {
        return;
    }
    if pa.is_zero() {
        m.swap_cols(a, b);
        v.swap_cols(a, b);
        return;
    }
    if pb.is_multiple_of(&pa) {
        let q = -(&pb / &pa);
        col_axpy(m, b, a, &q);
        col_axpy(v, b, a, &q);
        return;
    }
    let eg = pa.extended_gcd(&pb);
    let ra = &pa / &eg.gcd;
    let rb = &pb / &eg.gcd;
    col_gcd_step(m, a, b, &eg.x, &eg.y, &ra, &rb);
    col_gcd_step(v, a, b, &eg.x, &eg.y, &ra, &rb);
}

/// Row-style Hermite normal form: returns `(h, u)` with `u * m = h`, `u` unimodular.
pub fn hermite_form(m: &ZMatrix) -> (ZMatrix, ZMatrix) {
    let mut h = m.clone();
    let mut u = ZMatrix::identity(m.rows());
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        for i in r + 1..h.rows() {
            eliminate_row_entry(&mut h, &mut u, r, i, c);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let piv = h[(r, c)].clone();
        for k in 0..r {
            let q = h[(k, c)].div_floor(&piv);
            if !q.is_zero() {
                let nq = -q;
                row_axpy(&mut h, k, r, &nq);
                row_axpy(&mut u, k, r, &nq);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Hermite form without the transform, dropping zero rows.
pub fn hermite_rows(m: &ZMatrix) -> Vec<Vec<BigInt>> {
    let mut h = m.clone();
    let mut dummy = ZMatrix::zeros(m.rows(), 0);
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        for i in r + 1..h.rows() {
            eliminate_row_entry(&mut h, &mut dummy, r, i, c);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
        }
        let piv = h[(r, c)].clone();
        for k in 0..r {
            let q = h[(k, c)].div_floor(&piv);
            if !q.is_zero() {
                row_axpy(&mut h, k, r, &-q);
            }
        }
        r += 1;
    }
    (0..r).map(|i| h.row(i).to_vec()).collect()
}

/// Smith normal form: returns `(d, u, v)` with `u * m * v = d`, `d` diagonal,
/// nonnegative, and `d_i | d_{i+1}`.
pub fn smith_form(m: &ZMatrix) -> (ZMatrix, ZMatrix, ZMatrix) {
    let mut d = m.clone();
    let mut u = ZMatrix::identity(m.rows());
    let mut v = ZMatrix::identity(m.cols());
    let (rows, cols) = (d.rows(), d.cols());
    for t in 0..rows.min(cols) {
        // Bring the smallest nonzero entry of the trailing block to (t, t).
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        d.swap_cols(t, bj);
        v.swap_cols(t, bj);

        loop {
            for i in t + 1..rows {
                eliminate_row_entry(&mut d, &mut u, t, i, t);
            }
            for j in t + 1..cols {
                eliminate_col_entry(&mut d, &mut v, t, j, t);
            }
            let column_clear = (t + 1..rows).all(|i| d[(i, t)].is_zero());
            if !column_clear {
                continue;
            }
            let piv = d[(t, t)].clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&piv));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    row_axpy(&mut d, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_col(&mut d, t);
            negate_col(&mut v, t);
        }
    }
    (d, u, v)
}

/// Nonzero diagonal entries of the Smith form.
pub fn elementary_divisors(m: &ZMatrix) -> Vec<BigInt> {
    let (d, _, _) = smith_form(m);
    (0..d.rows().min(d.cols()))
        .map(|i| d[(i, i)].clone())
        .filter(|x| !x.is_zero())
        .collect()
}

pub fn is_hermite(h: &ZMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for i in 0..h.rows() {
        let pivot = (0..h.cols()).find(|&j| !h[(i, j)].is_zero());
        match pivot {
            None => seen_zero = true,
            Some(c) => {
                if seen_zero || last_pivot.is_some_and(|l| c <= l) || !h[(i, c)].is_positive() {
                    return false;
                }
                for k in 0..i {
                    let e = &h[(k, c)];
                    if e.is_negative() || e >= &h[(i, c)] {
                        return false;
                    }
                }
                for k in i + 1..h.rows() {
                    if !h[(k, c)].is_zero() {
                        return false;
                    }
                }
                last_pivot = Some(c);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> ZMatrix {
        ZMatrix::from_i64(rows)
    }

    #[test]
    fn hermite_of_diagonal_is_itself() {
        let m = z(&[&[2, 0], &[0, 3]]);
        let (h, u) = hermite_form(&m);
        assert_eq!(h, m);
        assert_eq!(u, ZMatrix::identity(2));
    }

    #[test]
    fn hermite_of_zero_matrix() {
        let m = ZMatrix::zeros(2, 2);
        let (h, u) = hermite_form(&m);
        assert!(h.is_zero());
        assert_eq!(u, ZMatrix::identity(2));
    }

    #[test]
    fn hermite_reduces_above_pivots() {
        let m = z(&[&[2, 4], &[1, 3]]);
        let (h, u) = hermite_form(&m);
        assert_eq!(u.mul(&m).unwrap(), h);
        assert_eq!(u.det().unwrap().abs(), BigInt::one());
        // [[1,3],[0,2]] with the 3 reduced into [0, 2).
        assert_eq!(h, z(&[&[1, 1], &[0, 2]]));
        assert!(is_hermite(&h));
    }

    #[test]
    fn smith_examples() {
        let (d, u, v) = smith_form(&z(&[&[2, 0], &[0, 3]]));
        assert_eq!(d, z(&[&[1, 0], &[0, 6]]));
        assert_eq!(u.mul(&z(&[&[2, 0], &[0, 3]])).unwrap().mul(&v).unwrap(), d);

        let (d, u, v) = smith_form(&ZMatrix::identity(3));
        assert_eq!(d, ZMatrix::identity(3));
        assert_eq!(u, ZMatrix::identity(3));
        assert_eq!(v, ZMatrix::identity(3));

        let (d, _, _) = smith_form(&z(&[&[5, 0], &[0, 5]]));
        assert_eq!(d, z(&[&[5, 0], &[0, 5]]));
    }

    #[test]
    fn smith_of_rectangular_and_singular() {
        let m = z(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let (d, u, v) = smith_form(&m);
        assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), d);
        assert_eq!(elementary_divisors(&m), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let r = z(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(elementary_divisors(&r), vec![BigInt::one()]);
    }
}
