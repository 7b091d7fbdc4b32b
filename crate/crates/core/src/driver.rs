//! Fixed-point iteration driver.
//!
//! Applies an operator repeatedly, records `||x_{k+1} - x_k||` per step and
//! stops on a small step, a solution hit, the iteration/time budget, or when
//! the iterate leaves the divergence ball (the unbounded branch of the
//! Douglas-Rachford dichotomy for inconsistent problems).

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use crate::algorithms::Operator;
use crate::error::{check_dim, Error, Result};
use crate::scalar::Real;
use crate::vector::{InnerProduct, Vector};

pub const DEFAULT_STEP_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITERS: usize = 1_000_000;
/// The divergence radius defaults to this factor times `max(1, ||x0||)`.
pub const DEFAULT_DIVERGENCE_FACTOR: f64 = 1e8;

#[derive(Clone, Debug, PartialEq)]
pub struct StoppingPolicy<T> {
    pub step_tol: T,
    pub max_iters: usize,
    /// Zero means unlimited.
    pub time_limit: Duration,
    /// `None` selects `1e8 * max(1, ||x0||)`.
    pub divergence_radius: Option<T>,
}

impl<T: Real> Default for StoppingPolicy<T> {
    fn default() -> Self {
        Self {
            step_tol: T::lit(DEFAULT_STEP_TOL),
            max_iters: DEFAULT_MAX_ITERS,
            time_limit: Duration::ZERO,
            divergence_radius: None,
        }
    }
}

impl<T: Real> StoppingPolicy<T> {
    pub fn with_step_tol(mut self, tol: T) -> Self {
        self.step_tol = tol;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = limit;
        self
    }

    pub fn with_divergence_radius(mut self, radius: T) -> Self {
        self.divergence_radius = Some(radius);
        self
    }

    pub fn validate(&self) -> Result<()> {
        // Written to also reject NaN.
        if self.step_tol.partial_cmp(&T::zero()) != Some(Ordering::Greater) {
            return Err(Error::Param(format!(
                "step_tol must be > 0, got {}",
                self.step_tol
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::Param("max_iters must be positive".into()));
        }
        if let Some(r) = self.divergence_radius {
            if r.partial_cmp(&T::zero()) != Some(Ordering::Greater) {
                return Err(Error::Param(format!(
                    "divergence_radius must be > 0, got {r}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Converged,
    MaxIterations,
    TimeLimit,
    Diverging,
    SolutionFound,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Converged => "converged",
            Status::MaxIterations => "max-iterations",
            Status::TimeLimit => "time-limit",
            Status::Diverging => "diverging",
            Status::SolutionFound => "solution-found",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Iterate (and shadow, when tracked) at iteration `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot<T> {
    pub k: usize,
    pub iterate: Vector<T>,
    pub shadow: Option<Vector<T>>,
}

#[derive(Clone, Debug)]
pub struct SolveReport<T> {
    pub status: Status,
    pub final_iterate: Vector<T>,
    pub shadow: Option<Vector<T>>,
    pub iterations: usize,
    /// `residuals[k] = ||x_{k+1} - x_k||`.
    pub residuals: Vec<T>,
    /// The last step `x_{k+1} - x_k`; estimates the displacement vector when
    /// the governing sequence drifts.
    pub displacement_estimate: Option<Vector<T>>,
    pub snapshots: Vec<Snapshot<T>>,
    pub elapsed: Duration,
}

impl<T: Real> SolveReport<T> {
    pub fn last_residual(&self) -> Option<T> {
        self.residuals.last().copied()
    }
}

type ShadowFn<'a, T> = Box<dyn Fn(&Vector<T>) -> Result<Vector<T>> + 'a>;
type TestFn<'a, T> = Box<dyn FnMut(&Vector<T>) -> bool + 'a>;

/// Configures and runs one fixed-point solve. Owns all per-solve state.
pub struct Iteration<'a, T: Real> {
    policy: StoppingPolicy<T>,
    inner: InnerProduct<T>,
    shadow: Option<ShadowFn<'a, T>>,
    solution_test: Option<TestFn<'a, T>>,
    check_stride: usize,
    trace_stride: usize,
}

impl<'a, T: Real> Iteration<'a, T> {
    pub fn new(policy: StoppingPolicy<T>) -> Self {
        Self {
            policy,
            inner: InnerProduct::euclidean(),
            shadow: None,
            solution_test: None,
            check_stride: 1,
            trace_stride: 0,
        }
    }

    /// Norm used for residuals and the divergence test.
    pub fn inner_product(mut self, inner: InnerProduct<T>) -> Self {
        self.inner = inner;
        self
    }

    /// Evaluates `map` on every iterate and reports its value at the end.
    pub fn shadow(mut self, map: impl Fn(&Vector<T>) -> Result<Vector<T>> + 'a) -> Self {
        self.shadow = Some(Box::new(map));
        self
    }

    /// Tracks the operator's own shadow map.
    pub fn operator_shadow<O: Operator<T> + ?Sized>(self, op: &'a O) -> Self {
        self.shadow(move |x| op.shadow(x))
    }

    /// Halts with [`Status::SolutionFound`] once `test` accepts the shadow
    /// (or the iterate, without a shadow map).
    pub fn solution_test(mut self, test: impl FnMut(&Vector<T>) -> bool + 'a) -> Self {
        self.solution_test = Some(Box::new(test));
        self
    }

    /// Run the solution test only every `stride` iterations (minimum 1).
    pub fn check_stride(mut self, stride: usize) -> Self {
        self.check_stride = stride.max(1);
        self
    }

    /// Keep a full snapshot every `stride` iterations; 0 disables snapshots.
    pub fn trace_stride(mut self, stride: usize) -> Self {
        self.trace_stride = stride;
        self
    }

    pub fn run<O: Operator<T> + ?Sized>(
        mut self,
        op: &O,
        x0: &Vector<T>,
    ) -> Result<SolveReport<T>> {
        self.policy.validate()?;
        check_dim(op.dim(), x0.dim())?;
        self.inner.check(x0.dim())?;
        if !x0.is_finite() {
            return Err(Error::Numerical { iteration: 0 });
        }
        let start = Instant::now();
        let radius = self.policy.divergence_radius.unwrap_or_else(|| {
            T::lit(DEFAULT_DIVERGENCE_FACTOR) * T::one().max(self.inner.norm_slice(x0.as_slice()))
        });

        let mut x = x0.clone();
        let mut shadow = self.eval_shadow(&x, 0)?;
        let mut residuals = Vec::new();
        let mut snapshots = Vec::new();
        let mut displacement = None;
        if self.trace_stride > 0 {
            snapshots.push(Snapshot {
                k: 0,
                iterate: x.clone(),
                shadow: shadow.clone(),
            });
        }

        let mut status = if self.test_solution(&x, shadow.as_ref()) {
            Some(Status::SolutionFound)
        } else {
            None
        };
        let mut k = 0;
        while status.is_none() {
            let next = op.apply(&x)?;
            k += 1;
            if !next.is_finite() {
                return Err(Error::Numerical { iteration: k });
            }
            let residual = self.inner.dist_slices(next.as_slice(), x.as_slice());
            residuals.push(residual);
            displacement = Some(&next - &x);
            x = next;
            shadow = self.eval_shadow(&x, k)?;
            if self.trace_stride > 0 && k % self.trace_stride == 0 {
                snapshots.push(Snapshot {
                    k,
                    iterate: x.clone(),
                    shadow: shadow.clone(),
                });
            }

            status = if k % self.check_stride == 0 && self.test_solution(&x, shadow.as_ref()) {
                Some(Status::SolutionFound)
            } else if residual <= self.policy.step_tol {
                Some(Status::Converged)
            } else if self.inner.norm_slice(x.as_slice()) > radius {
                Some(Status::Diverging)
            } else if k >= self.policy.max_iters {
                Some(Status::MaxIterations)
            } else if !self.policy.time_limit.is_zero() && start.elapsed() >= self.policy.time_limit
            {
                Some(Status::TimeLimit)
            } else {
                None
            };
        }

        if self.trace_stride > 0 && snapshots.last().map(|s| s.k) != Some(k) {
            snapshots.push(Snapshot {
                k,
                iterate: x.clone(),
                shadow: shadow.clone(),
            });
        }
        Ok(SolveReport {
            status: status.expect("loop exits with a status"),
            final_iterate: x,
            shadow,
            iterations: k,
            residuals,
            displacement_estimate: displacement,
            snapshots,
            elapsed: start.elapsed(),
        })
    }

    fn eval_shadow(&self, x: &Vector<T>, k: usize) -> Result<Option<Vector<T>>> {
        match &self.shadow {
            None => Ok(None),
            Some(map) => {
                let s = map(x)?;
                if !s.is_finite() {
                    return Err(Error::Numerical { iteration: k });
                }
                Ok(Some(s))
            }
        }
    }

    fn test_solution(&mut self, x: &Vector<T>, shadow: Option<&Vector<T>>) -> bool {
        match &mut self.solution_test {
            None => false,
            Some(test) => test(shadow.unwrap_or(x)),
        }
    }
}

/// Runs `op` from `x0` under `policy` with no shadow or solution test.
pub fn iterate<T: Real, O: Operator<T> + ?Sized>(
    op: &O,
    x0: &Vector<T>,
    policy: StoppingPolicy<T>,
) -> Result<SolveReport<T>> {
    Iteration::new(policy).run(op, x0)
}
