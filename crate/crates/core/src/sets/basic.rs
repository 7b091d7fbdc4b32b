use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sets::ProjectableSet;
use crate::vector::InnerProduct;

/// Closed ball of radius `r` centred at the origin. Use
/// [`translate`](crate::sets::translate) for other centres.
#[derive(Clone, Debug)]
pub struct Ball<T> {
    dim: usize,
    radius: T,
    inner: InnerProduct<T>,
}

impl<T: Real> Ball<T> {
    pub fn new(dim: usize, radius: T) -> Result<Self> {
        Self::with_inner(dim, radius, InnerProduct::euclidean())
    }

    pub fn with_inner(dim: usize, radius: T, inner: InnerProduct<T>) -> Result<Self> {
        if !(radius > T::zero() && radius.is_finite()) {
            return Err(Error::InvalidSet(format!(
                "ball radius must be > 0, got {radius}"
            )));
        }
        inner.check(dim)?;
        Ok(Self { dim, radius, inner })
    }

    pub fn radius(&self) -> T {
        self.radius
    }
}

impl<T: Real> ProjectableSet<T> for Ball<T> {
    fn name(&self) -> String {
        format!("ball(r={})", self.radius)
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        let factor = self.radius / self.inner.norm_slice(x).max(self.radius);
        for (o, &xi) in out.iter_mut().zip(x) {
            *o = factor * xi;
        }
    }

    fn contains_within(&self, x: &[T], tol: T) -> bool {
        self.inner.norm_slice(x) <= self.radius + tol
    }
}

/// Nonnegative orthant. Componentwise clamping is the projector under any
/// positive diagonal weights, since the distance is separable.
#[derive(Clone, Copy, Debug)]
pub struct Orthant {
    dim: usize,
}

impl Orthant {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }
}

impl<T: Real> ProjectableSet<T> for Orthant {
    fn name(&self) -> String {
        "orthant".into()
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        for (o, &xi) in out.iter_mut().zip(x) {
            *o = xi.max(T::zero());
        }
    }

    fn contains_within(&self, x: &[T], tol: T) -> bool {
        x.iter().all(|&xi| xi >= -tol)
    }
}

/// The whole space; its projector is the identity.
#[derive(Clone, Copy, Debug)]
pub struct WholeSpace {
    dim: usize,
}

impl WholeSpace {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }
}

impl<T: Real> ProjectableSet<T> for WholeSpace {
    fn name(&self) -> String {
        "space".into()
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        out.copy_from_slice(x);
    }

    fn contains_within(&self, _x: &[T], _tol: T) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::Vector;

    fn v(c: &[f64]) -> Vector<f64> {
        Vector::from_f64(c)
    }

    #[test]
    fn ball_examples() {
        let b = Ball::new(2, 1.0).unwrap();
        let p = b.project(&v(&[3.0, 4.0])).unwrap();
        assert!(p.max_abs_diff(&v(&[0.6, 0.8])) < 1e-15);
        assert_eq!(b.project(&v(&[0.0, 0.0])).unwrap(), v(&[0.0, 0.0]));
        let b2 = Ball::new(2, 2.0).unwrap();
        assert_eq!(b2.project(&v(&[1.0, 0.0])).unwrap(), v(&[1.0, 0.0]));
        assert!(Ball::<f64>::new(2, 0.0).is_err());
        assert!(Ball::<f64>::new(2, -1.0).is_err());
    }

    #[test]
    fn orthant_examples() {
        let o = Orthant::new(3);
        assert_eq!(
            o.project(&v(&[-1.0, 2.0, -3.0])).unwrap(),
            v(&[0.0, 2.0, 0.0])
        );
        let o = Orthant::new(2);
        assert_eq!(o.project(&v(&[1.0, 2.0])).unwrap(), v(&[1.0, 2.0]));
        let o = Orthant::new(1);
        assert_eq!(o.project(&v(&[-5.0])).unwrap(), v(&[0.0]));
    }

    #[test]
    fn whole_space_is_identity() {
        let s = WholeSpace::new(2);
        assert_eq!(s.project(&v(&[1.5, -2.0])).unwrap(), v(&[1.5, -2.0]));
    }
}
