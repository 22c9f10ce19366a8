//! Exact integer linear algebra on tiny matrices.
//!
//! Everything geometric in this crate reduces to signs of determinants of
//! matrices no larger than 6x6, so plain cofactor expansion over `BigInt`
//! is both exact and fast enough.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    match n {
        0 => BigInt::from(1),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        _ => {
            let mut acc = BigInt::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Generalized cross product: given `k-1` vectors in `R^k`, returns a vector
/// orthogonal to all of them, `h_j = (-1)^{j+1} det(A \ column j)`.
/// Nonzero exactly when the inputs are linearly independent.
pub fn orthogonal(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let k = rows.len() + 1;
    debug_assert!(rows.iter().all(|r| r.len() == k));
    (0..k)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = det(&minor);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn neg(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| -x).collect()
}

pub fn sign(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn det_small() {
        assert_eq!(det(&bi(&[&[3]])), BigInt::from(3));
        assert_eq!(det(&bi(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        // Vandermonde on 0,1,2: product of differences = 2.
        assert_eq!(
            det(&bi(&[&[1, 0, 0], &[1, 1, 1], &[1, 2, 4]])),
            BigInt::from(2)
        );
    }

    #[test]
    fn cross_product_in_r3() {
        let h = orthogonal(&bi(&[&[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(h, bi(&[&[0, 0, 1]])[0]);
    }

    #[test]
    fn orthogonal_is_orthogonal() {
        let rows = bi(&[&[1, 2, 3, 4], &[0, 1, 4, 9], &[5, 0, 2, 1]]);
        let h = orthogonal(&rows);
        for r in &rows {
            assert_eq!(dot(r, &h), BigInt::from(0));
        }
        assert!(h.iter().any(|x| !x.is_zero()));
    }
}
