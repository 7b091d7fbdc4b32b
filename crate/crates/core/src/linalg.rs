//! Small dense linear solves (Gram systems, affine projectors, circumcenters).

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Row-major dense square matrix, sized for the handful of tiny systems the
/// library needs.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> Dense<T> {
    pub fn from_rows(n: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), n * n, "square matrix data length");
        Self { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// LU factorization with partial pivoting. Pivots below a relative
    /// threshold of the largest entry are reported as singular.
    pub fn factor(&self) -> Result<Lu<T>> {
        let n = self.n;
        let mut a = self.data.clone();
        let scale = a.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        if scale == T::zero() {
            return Err(Error::SingularSystem("zero matrix".into()));
        }
        let tol = T::epsilon() * T::from_count(1000 * n.max(1)) * scale;
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let (piv, pval) =
                (col..n)
                    .map(|r| (r, a[r * n + col].abs()))
                    .fold(
                        (col, T::zero()),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if pval <= tol {
                return Err(Error::SingularSystem(format!(
                    "pivot {pval} below tolerance in column {col}"
                )));
            }
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                perm.swap(piv, col);
            }
            let d = a[col * n + col];
            for r in (col + 1)..n {
                let f = a[r * n + col] / d;
                a[r * n + col] = f;
                for j in (col + 1)..n {
                    let u = a[col * n + j];
                    a[r * n + j] -= f * u;
                }
            }
        }
        Ok(Lu { n, lu: a, perm })
    }

    pub fn solve(&self, rhs: &[T]) -> Result<Vec<T>> {
        Ok(self.factor()?.solve(rhs))
    }
}

/// Packed LU factors (unit lower triangle implied) plus the row permutation.
#[derive(Clone, Debug)]
pub struct Lu<T> {
    n: usize,
    lu: Vec<T>,
    perm: Vec<usize>,
}

impl<T: Real> Lu<T> {
    pub fn solve(&self, rhs: &[T]) -> Vec<T> {
        let n = self.n;
        assert_eq!(rhs.len(), n);
        let mut y: Vec<T> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[i * n + j];
                let yj = y[j];
                y[i] -= l * yj;
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let u = self.lu[i * n + j];
                let yj = y[j];
                y[i] -= u * yj;
            }
            y[i] /= self.lu[i * n + i];
        }
        y
    }
}
