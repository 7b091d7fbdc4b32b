use crate::algorithms::{open_unit, Operator};
use crate::error::{check_dim, Error, Result};
use crate::scalar::Real;
use crate::sets::{ProjectableSet, SetRef};
use crate::vector::Vector;

/// Averaged alternating modified reflections:
///
/// `x+ = (1 - alpha) x + alpha (2 beta P_{B-q} - Id)(2 beta P_{A-q} - Id) x`
///
/// with `alpha` in `]0,1]`, `beta` in `]0,1[` and anchor `q`. The shadow is
/// `P_A(x + q)`, which approaches the projection of `q` onto `A ∩ B`.
#[derive(Clone, Debug)]
pub struct Aamr<T: Real> {
    a: SetRef<T>,
    b: SetRef<T>,
    alpha: T,
    beta: T,
    anchor: Vector<T>,
}

impl<T: Real> Aamr<T> {
    pub fn new(a: SetRef<T>, b: SetRef<T>, alpha: T, beta: T, anchor: Vector<T>) -> Result<Self> {
        open_unit("beta", beta.to_f64().unwrap_or(f64::NAN))?;
        Self::build(a, b, alpha, beta, anchor)
    }

    /// The `beta = 1` limit, which with `alpha = 1/2` and `q = 0` is the
    /// classical Douglas-Rachford operator. Outside the method's convergence
    /// range; provided for cross-checks.
    pub fn unit_beta(a: SetRef<T>, b: SetRef<T>, alpha: T, anchor: Vector<T>) -> Result<Self> {
        Self::build(a, b, alpha, T::one(), anchor)
    }

    fn build(a: SetRef<T>, b: SetRef<T>, alpha: T, beta: T, anchor: Vector<T>) -> Result<Self> {
        if !(alpha > T::zero() && alpha <= T::one()) {
            return Err(Error::Param(format!(
                "alpha must lie in ]0,1], got {alpha}"
            )));
        }
        check_dim(a.dim(), b.dim())?;
        check_dim(a.dim(), anchor.dim())?;
        if !anchor.is_finite() {
            return Err(Error::Param("anchor point must be finite".into()));
        }
        Ok(Self {
            a,
            b,
            alpha,
            beta,
            anchor,
        })
    }

    /// `2 beta P_{C-q}(y) - y` where `P_{C-q}(y) = P_C(y + q) - q`.
    fn modified_reflection(&self, set: &dyn ProjectableSet<T>, y: &[T]) -> Vec<T> {
        let q = self.anchor.as_slice();
        let shifted: Vec<T> = y.iter().zip(q).map(|(&yi, &qi)| yi + qi).collect();
        let mut p = vec![T::zero(); y.len()];
        set.project_into(&shifted, &mut p);
        let two_beta = T::lit(2.0) * self.beta;
        p.iter()
            .zip(q)
            .zip(y)
            .map(|((&pi, &qi), &yi)| two_beta * (pi - qi) - yi)
            .collect()
    }
}

impl<T: Real> Operator<T> for Aamr<T> {
    fn label(&self) -> String {
        format!(
            "aamr(alpha={}, beta={})[A={}, B={}]",
            self.alpha,
            self.beta,
            self.a.name(),
            self.b.name()
        )
    }

    fn dim(&self) -> usize {
        self.a.dim()
    }

    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim(), x.dim())?;
        let ma = self.modified_reflection(self.a.as_ref(), x.as_slice());
        let mba: Vector<T> = self.modified_reflection(self.b.as_ref(), &ma).into();
        Ok(Vector::combine(T::one() - self.alpha, x, self.alpha, &mba))
    }

    fn shadow(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim(), x.dim())?;
        self.a.project(&(x + &self.anchor))
    }
}
