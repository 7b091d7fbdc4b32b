use crate::algorithms::Operator;
use crate::error::{check_dim, Error, Result};
use crate::scalar::Real;
use crate::sets::{reflect_into, SetRef};
use crate::vector::{InnerProduct, Vector};

/// Relative tolerance below which two points count as equal.
const COINCIDENT_TOL: f64 = 1e-12;
/// Relative squared-area threshold for collinearity.
const COLLINEAR_TOL: f64 = 1e-12;

/// Point of the affine hull of `a, b, c` equidistant from all three.
///
/// Coincident points degrade gracefully: three equal points give that point
/// and exactly two distinct points give their midpoint. Three distinct
/// collinear points have no circumcenter.
pub fn circumcenter<T: Real>(
    a: &Vector<T>,
    b: &Vector<T>,
    c: &Vector<T>,
    inner: &InnerProduct<T>,
) -> Result<Vector<T>> {
    check_dim(a.dim(), b.dim())?;
    check_dim(a.dim(), c.dim())?;
    inner.check(a.dim())?;

    let scale = [a, b, c]
        .iter()
        .map(|p| inner.norm_slice(p.as_slice()))
        .fold(T::one(), T::max);
    let eq_tol = T::lit(COINCIDENT_TOL) * scale;
    let same =
        |p: &Vector<T>, q: &Vector<T>| inner.dist_slices(p.as_slice(), q.as_slice()) <= eq_tol;
    let half = T::lit(0.5);

    match (same(a, b), same(b, c), same(a, c)) {
        (true, true, _) | (true, _, true) | (_, true, true) => return Ok(a.clone()),
        (true, false, false) => return Ok(Vector::combine(half, a, half, c)),
        (false, true, false) | (false, false, true) => {
            return Ok(Vector::combine(half, a, half, b))
        }
        _ => {}
    }

    let u = b - a;
    let v = c - a;
    let uu = inner.inner_slices(u.as_slice(), u.as_slice());
    let vv = inner.inner_slices(v.as_slice(), v.as_slice());
    let uv = inner.inner_slices(u.as_slice(), v.as_slice());
    let det = uu * vv - uv * uv;
    if det <= T::lit(COLLINEAR_TOL) * uu * vv {
        return Err(Error::DegenerateTriangle);
    }
    // Gram system [uu uv; uv vv] [s; t] = [uu/2; vv/2]
    let s = vv * (uu - uv) / (T::lit(2.0) * det);
    let t = uu * (vv - uv) / (T::lit(2.0) * det);
    let mut out = a.clone();
    out.axpy(s, &u);
    out.axpy(t, &v);
    Ok(out)
}

/// Circumcentered DR: the circumcenter of `x, R_A x, R_B R_A x`.
/// Meant for affine subspaces; shadow `P_A`.
#[derive(Clone, Debug)]
pub struct CircumcenteredDr<T: Real> {
    a: SetRef<T>,
    b: SetRef<T>,
    inner: InnerProduct<T>,
}

impl<T: Real> CircumcenteredDr<T> {
    pub fn new(a: SetRef<T>, b: SetRef<T>) -> Result<Self> {
        Self::with_inner(a, b, InnerProduct::euclidean())
    }

    pub fn with_inner(a: SetRef<T>, b: SetRef<T>, inner: InnerProduct<T>) -> Result<Self> {
        check_dim(a.dim(), b.dim())?;
        inner.check(a.dim())?;
        Ok(Self { a, b, inner })
    }
}

impl<T: Real> Operator<T> for CircumcenteredDr<T> {
    fn label(&self) -> String {
        format!("cdr[A={}, B={}]", self.a.name(), self.b.name())
    }

    fn dim(&self) -> usize {
        self.a.dim()
    }

    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim(), x.dim())?;
        let mut ra = vec![T::zero(); x.dim()];
        reflect_into(self.a.as_ref(), x.as_slice(), &mut ra);
        let mut rba = vec![T::zero(); x.dim()];
        reflect_into(self.b.as_ref(), &ra, &mut rba);
        circumcenter(x, &ra.into(), &rba.into(), &self.inner)
    }

    fn shadow(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.a.project(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{shared, Hyperplane};

    fn v(c: &[f64]) -> Vector<f64> {
        Vector::from_f64(c)
    }

    fn cc(a: &[f64], b: &[f64], c: &[f64]) -> Result<Vector<f64>> {
        circumcenter(&v(a), &v(b), &v(c), &InnerProduct::euclidean())
    }

    #[test]
    fn circumcenter_examples() {
        assert!(
            cc(&[0.0, 0.0], &[2.0, 0.0], &[0.0, 2.0])
                .unwrap()
                .max_abs_diff(&v(&[1.0, 1.0]))
                < 1e-15
        );
        assert_eq!(
            cc(&[3.0, 7.0], &[3.0, 7.0], &[3.0, 7.0]).unwrap(),
            v(&[3.0, 7.0])
        );
        assert!(cc(&[1.0, 2.0], &[1.0, -2.0], &[-1.0, -2.0]).unwrap().norm() < 1e-15);
    }

    #[test]
    fn circumcenter_duplicates_and_collinear() {
        assert_eq!(
            cc(&[1.0, 2.0], &[1.0, -2.0], &[1.0, 2.0]).unwrap(),
            v(&[1.0, 0.0])
        );
        assert_eq!(
            cc(&[0.0, 0.0], &[0.0, 0.0], &[4.0, 2.0]).unwrap(),
            v(&[2.0, 1.0])
        );
        assert_eq!(
            cc(&[0.0, 0.0], &[4.0, 2.0], &[4.0, 2.0]).unwrap(),
            v(&[2.0, 1.0])
        );
        assert_eq!(
            cc(&[0.0, 0.0], &[1.0, 1.0], &[2.0, 2.0]).unwrap_err(),
            Error::DegenerateTriangle
        );
    }

    #[test]
    fn circumcenter_is_equidistant_in_3d() {
        let p = cc(&[1.0, 0.0, 2.0], &[-1.0, 3.0, 0.5], &[0.0, -2.0, 1.0]).unwrap();
        let d = |q: &[f64]| (&p - &v(q)).norm();
        let (da, db, dc) = (
            d(&[1.0, 0.0, 2.0]),
            d(&[-1.0, 3.0, 0.5]),
            d(&[0.0, -2.0, 1.0]),
        );
        assert!((da - db).abs() < 1e-12 && (da - dc).abs() < 1e-12);
    }

    #[test]
    fn cdr_examples() {
        let xa: SetRef<f64> = shared(Hyperplane::new(v(&[0.0, 1.0]), 0.0).unwrap());
        let ya: SetRef<f64> = shared(Hyperplane::new(v(&[1.0, 0.0]), 0.0).unwrap());
        let cdr = CircumcenteredDr::new(xa.clone(), ya).unwrap();
        assert!(cdr.apply(&v(&[1.0, 2.0])).unwrap().norm() < 1e-15);
        assert_eq!(cdr.apply(&v(&[0.0, 0.0])).unwrap(), v(&[0.0, 0.0]));
        let same = CircumcenteredDr::new(xa.clone(), xa).unwrap();
        assert_eq!(same.apply(&v(&[1.0, 2.0])).unwrap(), v(&[1.0, 0.0]));
    }
}
