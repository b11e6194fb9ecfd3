//! Small dense exact linear algebra used by the geometry code.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::num::Rational;

/// Determinant by Bareiss fraction-free elimination.
pub(crate) fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Rank of an integer matrix (fraction-free row reduction).
pub(crate) fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            let (top, rest) = a.split_at_mut(r);
            let pivot_row = &top[rank];
            let piv = &pivot_row[c];
            for (x, p) in rest[0][c..].iter_mut().zip(&pivot_row[c..]) {
                *x = &*x * piv - p * &f;
            }
            crate::num::make_primitive(&mut rest[0]);
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Reduced row echelon form; returns the pivot columns.
pub(crate) fn rref(a: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in &mut a[r][c..] {
            *x = &*x * &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = &*x - &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : A x = 0}` for a matrix with `cols` columns.
pub(crate) fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let pivots = rref(&mut a);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = alloc::vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(det(&ints(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])), BigInt::from(6));
        assert_eq!(det(&ints(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(&ints(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn integer_rank() {
        assert_eq!(rank_int(&ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
        assert_eq!(rank_int(&ints(&[&[0, 0]])), 0);
    }

    #[test]
    fn nullspace_basis() {
        let a = vec![vec![rat(1), rat(1), rat(0)], vec![rat(0), rat(1), rat(1)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![rat(1), rat(-1), rat(1)]);
    }
}
