//! Symmetric tridiagonal eigensolver (implicit QL with Wilkinson shifts).
//!
//! Follows the EISPACK `tql2` procedure, accumulating rotations into an
//! identity matrix so the returned columns are orthonormal eigenvectors.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors
/// stored as columns. Each column is signed so its first nonzero component
/// is positive.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

/// Diagonalizes the symmetric tridiagonal matrix with `diagonal` and
/// `off_diagonal` (`off_diagonal[i]` couples `i` and `i + 1`).
pub fn symmetric_tridiagonal_eigen(diagonal: &[f64], off_diagonal: &[f64]) -> Result<Eigensystem> {
    let n = diagonal.len();
    assert_eq!(off_diagonal.len() + 1, n.max(1), "off-diagonal length");
    let mut d = diagonal.to_vec();
    let mut e: Vec<f64> = off_diagonal.iter().copied().chain(std::iter::once(0.0)).collect();
    let mut v = DMatrix::<f64>::identity(n, n);

    let eps = f64::EPSILON;
    let mut shift_total = 0.0;
    let mut tst1 = 0.0f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_SWEEPS {
                    return Err(Error::NoConvergence {
                        index: l,
                        iterations: MAX_SWEEPS,
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                shift_total += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let vk1 = v[(k, i + 1)];
                        let vk = v[(k, i)];
                        v[(k, i + 1)] = s * vk + c * vk1;
                        v[(k, i)] = c * vk - s * vk1;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += shift_total;
        e[l] = 0.0;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&k| d[k]).collect();
    let mut vectors = DMatrix::<f64>::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let src = v.column(k);
        let sign = match src.iter().find(|x| **x != 0.0) {
            Some(x) if *x < 0.0 => -1.0,
            _ => 1.0,
        };
        vectors.set_column(col, &(src * sign));
    }
    Ok(Eigensystem { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(d: &[f64], e: &[f64]) -> DMatrix<f64> {
        let n = d.len();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                d[i]
            } else if i + 1 == j {
                e[i]
            } else if j + 1 == i {
                e[j]
            } else {
                0.0
            }
        })
    }

    fn check(d: &[f64], e: &[f64]) {
        let es = symmetric_tridiagonal_eigen(d, e).unwrap();
        let a = dense(d, e);
        let n = d.len();
        let vtv = es.vectors.transpose() * &es.vectors;
        assert!((vtv - DMatrix::identity(n, n)).amax() < 1e-12);
        for k in 0..n {
            let col = es.vectors.column(k);
            let resid = &a * col - col * es.values[k];
            assert!(resid.amax() < 1e-12 * (1.0 + a.amax()), "residual {}", resid.amax());
        }
        assert!(es.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn one_by_one() {
        let es = symmetric_tridiagonal_eigen(&[5.0], &[]).unwrap();
        assert_eq!(es.values, vec![5.0]);
        assert_eq!(es.vectors[(0, 0)], 1.0);
    }

    #[test]
    fn two_by_two() {
        let es = symmetric_tridiagonal_eigen(&[0.0, 0.0], &[1.0]).unwrap();
        assert!((es.values[0] + 1.0).abs() < 1e-15);
        assert!((es.values[1] - 1.0).abs() < 1e-15);
        check(&[0.0, 0.0], &[1.0]);
    }

    #[test]
    fn residuals_on_assorted_matrices() {
        check(&[1.0, 2.0, 3.0, 4.0], &[0.5, 0.25, 0.125]);
        check(&[0.0; 8], &[1.0; 7]);
        check(&[-3.0, 7.0, 0.0, 1e-3, 2.0], &[1e-6, 4.0, 1e3, 0.7]);
        // decoupled block: a zero coupling splits the problem
        check(&[1.0, 2.0, 3.0], &[0.0, 1.0]);
        check(&[2.0; 40], &[1.0; 39]);
    }

    #[test]
    fn free_chain_spectrum() {
        // eigenvalues of the path adjacency are 2 cos(k pi / (n + 1))
        let n = 20;
        let es = symmetric_tridiagonal_eigen(&vec![0.0; n], &vec![1.0; n - 1]).unwrap();
        let mut expected: Vec<f64> = (1..=n)
            .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos())
            .collect();
        expected.sort_by(f64::total_cmp);
        for (a, b) in es.values.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-13);
        }
    }
}
