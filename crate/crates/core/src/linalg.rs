//! Small dense linear algebra on row-major square matrices.

use std::cmp::Ordering;

use crate::scalar::Scalar;

/// Determinant by LU factorization with partial pivoting.
pub fn determinant<T: Scalar>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    let mut det = T::one();
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| a[i][k].abs().partial_cmp(&a[j][k].abs()).unwrap_or(Ordering::Equal))
            .unwrap();
        if a[pivot][k] == T::zero() {
            return T::zero();
        }
        if pivot != k {
            a.swap(pivot, k);
            det = -det;
        }
        det = det * a[k][k];
        let (top, rest) = a.split_at_mut(k + 1);
        let row_k = &top[k];
        for row in rest {
            let f = row[k] / row_k[k];
            for (x, &v) in row[k..].iter_mut().zip(&row_k[k..]) {
                *x = *x - f * v;
            }
        }
    }
    det
}

/// Cholesky factor `L` with `A = L Lᵀ`, or `None` if `A` is not positive
/// definite.
pub fn cholesky<T: Scalar>(a: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    let mut l = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s = (0..j).fold(a[i][j], |s, k| s - l[i][k] * l[j][k]);
            if i == j {
                if !(s > T::zero()) {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Some(l)
}

/// Solves `L Lᵀ x = b` given the Cholesky factor.
pub fn cholesky_solve<T: Scalar>(l: &[Vec<T>], b: &[T]) -> Vec<T> {
    let n = l.len();
    let mut y = vec![T::zero(); n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s = s - l[i][k] * y[k];
        }
        y[i] = s / l[i][i];
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in i + 1..n {
            s = s - l[k][i] * x[k];
        }
        x[i] = s / l[i][i];
    }
    x
}
