use crate::error::{check_dim, Error, Result};
use crate::linalg::{Dense, Lu};
use crate::scalar::Real;
use crate::sets::ProjectableSet;
use crate::vector::{InnerProduct, Vector};

fn nonzero_normal<T: Real>(normal: &Vector<T>, inner: &InnerProduct<T>) -> Result<T> {
    inner.check(normal.dim())?;
    if !normal.is_finite() {
        return Err(Error::InvalidSet("normal has non-finite entries".into()));
    }
    let nn = inner.inner_slices(normal.as_slice(), normal.as_slice());
    if nn == T::zero() {
        return Err(Error::InvalidSet("normal vector is zero".into()));
    }
    Ok(nn)
}

/// `{x : <a, x> = b}` in the ambient inner product.
#[derive(Clone, Debug)]
pub struct Hyperplane<T> {
    normal: Vector<T>,
    offset: T,
    inner: InnerProduct<T>,
    normal_sq: T,
}

impl<T: Real> Hyperplane<T> {
    pub fn new(normal: Vector<T>, offset: T) -> Result<Self> {
        Self::with_inner(normal, offset, InnerProduct::euclidean())
    }

    pub fn with_inner(normal: Vector<T>, offset: T, inner: InnerProduct<T>) -> Result<Self> {
        let normal_sq = nonzero_normal(&normal, &inner)?;
        Ok(Self {
            normal,
            offset,
            inner,
            normal_sq,
        })
    }

    /// The plain linear constraint `sum_j c_j x_j = b`, expressed in a
    /// weighted space by rescaling the normal to `c_j / w_j`.
    pub fn from_coefficients(coeffs: Vector<T>, offset: T, inner: InnerProduct<T>) -> Result<Self> {
        let normal = rescale(coeffs, &inner)?;
        Self::with_inner(normal, offset, inner)
    }

    pub fn normal(&self) -> &Vector<T> {
        &self.normal
    }

    pub fn offset(&self) -> T {
        self.offset
    }

    /// `<a, x> - b`.
    pub fn residual(&self, x: &[T]) -> T {
        self.inner.inner_slices(self.normal.as_slice(), x) - self.offset
    }
}

fn rescale<T: Real>(coeffs: Vector<T>, inner: &InnerProduct<T>) -> Result<Vector<T>> {
    match inner.weights() {
        None => Ok(coeffs),
        Some(w) => {
            check_dim(w.len(), coeffs.dim())?;
            Ok(coeffs.iter().zip(w).map(|(&c, &wj)| c / wj).collect())
        }
    }
}

impl<T: Real> ProjectableSet<T> for Hyperplane<T> {
    fn name(&self) -> String {
        format!("hyperplane(dim={})", self.normal.dim())
    }

    fn dim(&self) -> usize {
        self.normal.dim()
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        let step = -self.residual(x) / self.normal_sq;
        for ((o, &xi), &ai) in out.iter_mut().zip(x).zip(self.normal.as_slice()) {
            *o = xi + step * ai;
        }
    }

    fn contains_within(&self, x: &[T], tol: T) -> bool {
        self.residual(x).abs() <= tol
    }
}

/// `{x : <a, x> <= b}` in the ambient inner product.
#[derive(Clone, Debug)]
pub struct Halfspace<T> {
    normal: Vector<T>,
    offset: T,
    inner: InnerProduct<T>,
    normal_sq: T,
}

impl<T: Real> Halfspace<T> {
    pub fn new(normal: Vector<T>, offset: T) -> Result<Self> {
        Self::with_inner(normal, offset, InnerProduct::euclidean())
    }

    pub fn with_inner(normal: Vector<T>, offset: T, inner: InnerProduct<T>) -> Result<Self> {
        let normal_sq = nonzero_normal(&normal, &inner)?;
        Ok(Self {
            normal,
            offset,
            inner,
            normal_sq,
        })
    }

    pub fn from_coefficients(coeffs: Vector<T>, offset: T, inner: InnerProduct<T>) -> Result<Self> {
        let normal = rescale(coeffs, &inner)?;
        Self::with_inner(normal, offset, inner)
    }

    pub fn residual(&self, x: &[T]) -> T {
        self.inner.inner_slices(self.normal.as_slice(), x) - self.offset
    }
}

impl<T: Real> ProjectableSet<T> for Halfspace<T> {
    fn name(&self) -> String {
        format!("halfspace(dim={})", self.normal.dim())
    }

    fn dim(&self) -> usize {
        self.normal.dim()
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        let step = (-self.residual(x)).min(T::zero()) / self.normal_sq;
        for ((o, &xi), &ai) in out.iter_mut().zip(x).zip(self.normal.as_slice()) {
            *o = xi + step * ai;
        }
    }

    fn contains_within(&self, x: &[T], tol: T) -> bool {
        self.residual(x) <= tol
    }
}

/// Solution set of `A x = b` for a full-row-rank `A`, with projector
/// `x - A^T (A A^T)^{-1} (A x - b)` (Euclidean).
#[derive(Clone, Debug)]
pub struct AffineRows<T> {
    rows: usize,
    cols: usize,
    matrix: Vec<T>,
    rhs: Vec<T>,
    gram: Lu<T>,
}

impl<T: Real> AffineRows<T> {
    /// `matrix` is row-major with `rhs.len()` rows.
    pub fn new(matrix: Vec<T>, rhs: Vec<T>) -> Result<Self> {
        let rows = rhs.len();
        if rows == 0 || matrix.is_empty() || !matrix.len().is_multiple_of(rows) {
            return Err(Error::Dimension {
                expected: rows,
                found: matrix.len(),
            });
        }
        let cols = matrix.len() / rows;
        let mut gram = vec![T::zero(); rows * rows];
        for i in 0..rows {
            for j in 0..rows {
                let ri = &matrix[i * cols..(i + 1) * cols];
                let rj = &matrix[j * cols..(j + 1) * cols];
                gram[i * rows + j] = ri.iter().zip(rj).map(|(&a, &b)| a * b).sum();
            }
        }
        let gram = Dense::from_rows(rows, gram).factor().map_err(|_| {
            Error::SingularSystem("A A^T is singular: A lacks full row rank".into())
        })?;
        Ok(Self {
            rows,
            cols,
            matrix,
            rhs,
            gram,
        })
    }

    fn row(&self, i: usize) -> &[T] {
        &self.matrix[i * self.cols..(i + 1) * self.cols]
    }

    fn residuals(&self, x: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum::<T>() - self.rhs[i])
            .collect()
    }
}

impl<T: Real> ProjectableSet<T> for AffineRows<T> {
    fn name(&self) -> String {
        format!("affine({}x{})", self.rows, self.cols)
    }

    fn dim(&self) -> usize {
        self.cols
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        let y = self.gram.solve(&self.residuals(x));
        out.copy_from_slice(x);
        for (i, &yi) in y.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o -= a * yi;
            }
        }
    }

    fn contains_within(&self, x: &[T], tol: T) -> bool {
        self.residuals(x).iter().all(|r| r.abs() <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn v(c: &[f64]) -> Vector<f64> {
        Vector::from_f64(c)
    }

    fn close(a: &Vector<f64>, b: &Vector<f64>, tol: f64) {
        assert!(a.max_abs_diff(b) <= tol, "{a:?} vs {b:?}");
    }

    /// Quadratic-program oracle: minimizes ||c - x||^2 subject to <a, c> = b
    /// by solving the KKT system [2I a; a^T 0][c; lambda] = [2x; b].
    fn hyperplane_oracle(a: [f64; 2], b: f64, x: [f64; 2]) -> [f64; 2] {
        let kkt = Dense::from_rows(3, vec![2.0, 0.0, a[0], 0.0, 2.0, a[1], a[0], a[1], 0.0]);
        let sol = kkt.solve(&[2.0 * x[0], 2.0 * x[1], b]).unwrap();
        [sol[0], sol[1]]
    }

    #[test]
    fn hyperplane_examples() {
        let h = Hyperplane::new(v(&[1.0, 1.0]), 2.0).unwrap();
        close(&h.project(&v(&[0.0, 0.0])).unwrap(), &v(&[1.0, 1.0]), 1e-15);
        let o = hyperplane_oracle([1.0, 1.0], 2.0, [0.0, 0.0]);
        close(&v(&o), &v(&[1.0, 1.0]), 1e-14);

        let h = Hyperplane::new(v(&[1.0, 0.0]), 1.0).unwrap();
        assert_eq!(h.project(&v(&[1.0, 5.0])).unwrap(), v(&[1.0, 5.0]));

        let h = Hyperplane::new(v(&[0.0, 3.0]), 6.0).unwrap();
        close(&h.project(&v(&[7.0, 0.0])).unwrap(), &v(&[7.0, 2.0]), 1e-15);
        close(
            &v(&hyperplane_oracle([0.0, 3.0], 6.0, [7.0, 0.0])),
            &v(&[7.0, 2.0]),
            1e-14,
        );
    }

    #[test]
    fn hyperplane_result_satisfies_constraint() {
        let h = Hyperplane::new(v(&[0.3, -2.0, 1.7]), -4.2).unwrap();
        let p = h.project(&v(&[10.0, 3.0, -8.0])).unwrap();
        assert!(h.residual(p.as_slice()).abs() <= 1e-12);
    }

    #[test]
    fn zero_normal_rejected() {
        assert!(matches!(
            Hyperplane::new(v(&[0.0, 0.0]), 1.0),
            Err(Error::InvalidSet(_))
        ));
        assert!(matches!(
            Halfspace::new(v(&[0.0]), 1.0),
            Err(Error::InvalidSet(_))
        ));
    }

    #[test]
    fn halfspace_examples() {
        let h = Halfspace::new(v(&[1.0, 0.0]), 0.0).unwrap();
        assert_eq!(h.project(&v(&[-1.0, 2.0])).unwrap(), v(&[-1.0, 2.0]));
        assert_eq!(h.project(&v(&[3.0, 2.0])).unwrap(), v(&[0.0, 2.0]));
        let h = Halfspace::new(v(&[1.0, 1.0]), 2.0).unwrap();
        close(&h.project(&v(&[2.0, 2.0])).unwrap(), &v(&[1.0, 1.0]), 1e-15);
    }

    #[test]
    fn weighted_hyperplane_projects_in_weighted_norm() {
        let w = InnerProduct::weighted(vec![1.0, 4.0]).unwrap();
        // plain constraint x0 + x1 = 1 in the space with weights (1, 4)
        let h = Hyperplane::from_coefficients(v(&[1.0, 1.0]), 1.0, w.clone()).unwrap();
        let p = h.project(&v(&[0.0, 0.0])).unwrap();
        assert_abs_diff_eq!(p[0] + p[1], 1.0, epsilon = 1e-14);
        // minimizer of p0^2 + 4 p1^2 on the line is (0.8, 0.2)
        close(&p, &v(&[0.8, 0.2]), 1e-14);
    }

    #[test]
    fn affine_rows_examples() {
        let a = AffineRows::new(vec![1.0, 0.0], vec![1.0]).unwrap();
        close(&a.project(&v(&[3.0, 4.0])).unwrap(), &v(&[1.0, 4.0]), 1e-15);

        let id = AffineRows::new(vec![1.0, 0.0, 0.0, 1.0], vec![2.0, 3.0]).unwrap();
        close(
            &id.project(&v(&[-7.0, 11.0])).unwrap(),
            &v(&[2.0, 3.0]),
            1e-14,
        );

        let a = AffineRows::new(vec![1.0, 1.0], vec![2.0]).unwrap();
        let h = Hyperplane::new(v(&[1.0, 1.0]), 2.0).unwrap();
        let x = v(&[0.0, 0.0]);
        close(&a.project(&x).unwrap(), &h.project(&x).unwrap(), 1e-15);
        close(&a.project(&x).unwrap(), &v(&[1.0, 1.0]), 1e-15);
    }

    #[test]
    fn affine_rows_satisfies_system() {
        let m = vec![1.0, 2.0, 0.0, -1.0, 0.5, 1.0, 3.0, 0.0, 0.0, 1.0, 1.0, 1.0];
        let a = AffineRows::new(m, vec![1.0, -2.0]).unwrap();
        let p = a.project(&v(&[5.0, -3.0, 2.0, 8.0, 1.0, 0.0])).unwrap();
        assert!(a.contains_within(p.as_slice(), 1e-10));
    }

    #[test]
    fn affine_rows_rank_deficient() {
        let r = AffineRows::new(vec![1.0, 1.0, 2.0, 2.0], vec![1.0, 2.0]);
        assert!(matches!(r, Err(Error::SingularSystem(_))));
    }
}
