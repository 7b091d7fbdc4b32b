//! Constraint sets with closed-form projectors.
//!
//! Every set exposes a single-valued projector. For nonconvex sets the
//! projector is multivalued and the set returns a fixed, documented
//! selection, so iterations built on top of it are deterministic.

use std::fmt;
use std::sync::Arc;

use crate::error::{check_dim, Result};
use crate::scalar::Real;
use crate::vector::Vector;

mod affine;
mod basic;
mod combinators;
mod discrete;

pub use affine::{AffineRows, Halfspace, Hyperplane};
pub use basic::{Ball, Orthant, WholeSpace};
pub use combinators::{dilate, translate, Diagonal, Dilated, Grouped, Product, Translated};
pub use discrete::{BinaryBox, BinarySumAtMost, BinarySumEquals, SumAtMost, SumEquals};

/// Absolute tolerance on constraint residuals used by [`ProjectableSet::contains`].
pub const MEMBERSHIP_TOL: f64 = 1e-8;

/// Shared handle to a set; sets are immutable once built.
pub type SetRef<T> = Arc<dyn ProjectableSet<T>>;

pub trait ProjectableSet<T: Real>: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn dim(&self) -> usize;

    fn is_convex(&self) -> bool;

    /// Writes the selected projection of `x` into `out`. Both slices have
    /// length [`dim`](Self::dim); `out` may hold garbage on entry.
    fn project_into(&self, x: &[T], out: &mut [T]);

    /// Membership with an absolute tolerance on the constraint residuals.
    fn contains_within(&self, x: &[T], tol: T) -> bool;

    fn project(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim(), x.dim())?;
        let mut out = Vector::zeros(x.dim());
        self.project_into(x.as_slice(), out.as_mut_slice());
        Ok(out)
    }

    /// `R_C(x) = 2 P_C(x) - x`.
    fn reflect(&self, x: &Vector<T>) -> Result<Vector<T>> {
        let p = self.project(x)?;
        Ok(Vector::combine(T::lit(2.0), &p, -T::one(), x))
    }

    fn contains(&self, x: &Vector<T>) -> bool {
        x.dim() == self.dim() && self.contains_within(x.as_slice(), T::lit(MEMBERSHIP_TOL))
    }
}

/// Wraps a concrete set into a shared handle.
pub fn shared<T: Real, S: ProjectableSet<T> + 'static>(set: S) -> SetRef<T> {
    Arc::new(set)
}

pub(crate) fn reflect_into<T: Real>(set: &dyn ProjectableSet<T>, x: &[T], out: &mut [T]) {
    set.project_into(x, out);
    let two = T::lit(2.0);
    for (o, &xi) in out.iter_mut().zip(x) {
        *o = two * *o - xi;
    }
}
