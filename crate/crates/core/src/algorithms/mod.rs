//! Fixed-point operators built from projectors and reflectors.
//!
//! Composition order follows the operator formulas as written: the
//! rightmost factor is applied first. Each operator's label spells out the
//! order it applies its sets in.

use crate::error::{check_dim, Error, Result};
use crate::scalar::Real;
use crate::sets::SetRef;
use crate::vector::Vector;

mod aamr;
mod circumcenter;
mod douglas_rachford;
mod product;
mod projections;

pub use aamr::Aamr;
pub use circumcenter::{circumcenter, CircumcenteredDr};
pub use douglas_rachford::{
    best_approximation_pair, AnchoredDr, CyclicDr, DouglasRachford, GeneralizedDr, NaiveMultisetDr,
    Raar,
};
pub use product::{lift, unlift_shadow, ProductDr, ProductShadow, ProductSpace};
pub use projections::{AveragedProjections, CyclicProjections};

/// A self-map of the space, iterated by the [driver](crate::driver).
pub trait Operator<T: Real>: Send + Sync {
    fn label(&self) -> String;

    /// Dimension of the space the operator acts on.
    fn dim(&self) -> usize;

    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>>;

    /// The point that approximates a solution when the iterate is `x`.
    /// Defaults to `x` itself.
    fn shadow(&self, x: &Vector<T>) -> Result<Vector<T>> {
        Ok(x.clone())
    }
}

impl<T: Real, O: Operator<T> + ?Sized> Operator<T> for Box<O> {
    fn label(&self) -> String {
        (**self).label()
    }
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        (**self).apply(x)
    }
    fn shadow(&self, x: &Vector<T>) -> Result<Vector<T>> {
        (**self).shadow(x)
    }
}

/// Operator backed by a closure.
pub struct FnOperator<F> {
    label: String,
    dim: usize,
    step: F,
}

impl<F> FnOperator<F> {
    pub fn new(label: impl Into<String>, dim: usize, step: F) -> Self {
        Self {
            label: label.into(),
            dim,
            step,
        }
    }
}

impl<T, F> Operator<T> for FnOperator<F>
where
    T: Real,
    F: Fn(&Vector<T>) -> Result<Vector<T>> + Send + Sync,
{
    fn label(&self) -> String {
        self.label.clone()
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim, x.dim())?;
        (self.step)(x)
    }
}

/// Common dimension of a nonempty list of at least `min` sets.
pub(crate) fn common_dim<T: Real>(sets: &[SetRef<T>], min: usize) -> Result<usize> {
    if sets.len() < min {
        return Err(Error::InvalidProblem(format!(
            "need at least {min} set(s), got {}",
            sets.len()
        )));
    }
    let dim = sets[0].dim();
    for s in &sets[1..] {
        check_dim(dim, s.dim())?;
    }
    Ok(dim)
}

pub(crate) fn open_unit(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::Param(format!(
            "{name} must lie in ]0,1[, got {value}"
        )))
    }
}

pub(crate) fn join_names<T: Real>(sets: &[SetRef<T>]) -> String {
    sets.iter().map(|s| s.name()).collect::<Vec<_>>().join(",")
}
