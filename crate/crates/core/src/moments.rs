//! Discretized nonnegative moment problem: find a density `x >= 0` on
//! `[a, b]` with total mass 1, mean `mu` and variance `var`.
//!
//! Functions are sampled on `N` uniform nodes and integrals become trapezoid
//! sums, so `L^2[a, b]` turns into `R^N` with the weighted inner product
//! `<x, y>_w = sum_j w_j x_j y_j`. The three moment constraints are weighted
//! hyperplanes `G_i = {x : <x, t^(i-1)>_w = c_i}` with `c = (1, mu, var + mu^2)`;
//! the fourth set is the orthant. Clamping is the exact projector onto the
//! orthant in this norm because the weights are positive and the distance is
//! separable.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algorithms::{lift, AnchoredDr, CyclicDr, CyclicProjections, Operator, ProductSpace};
use crate::driver::{Iteration, SolveReport, StoppingPolicy};
use crate::error::{Error, Result};
use crate::linalg::Dense;
use crate::scalar::Real;
use crate::sets::{Hyperplane, Orthant, SetRef};
use crate::vector::{InnerProduct, Vector};

/// Sampled problem data.
#[derive(Clone, Debug)]
pub struct MomentProblem<T> {
    a: T,
    b: T,
    mu: T,
    var: T,
    grid: Vec<T>,
    weights: Vec<T>,
    targets: [T; 3],
    inner: InnerProduct<T>,
}

impl<T: Real> MomentProblem<T> {
    pub fn new(a: T, b: T, mu: T, var: T, nodes: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Config(format!(
                "interval needs a < b, got [{a}, {b}]"
            )));
        }
        if !(var.is_finite() && var > T::zero()) {
            return Err(Error::Config(format!(
                "variance must be positive, got {var}"
            )));
        }
        if !mu.is_finite() {
            return Err(Error::Config("mean must be finite".into()));
        }
        if nodes < 3 {
            return Err(Error::Config(format!(
                "grid needs at least 3 nodes, got {nodes}"
            )));
        }
        let h = (b - a) / T::from_count(nodes - 1);
        let grid: Vec<T> = (0..nodes)
            .map(|j| {
                if j == nodes - 1 {
                    b
                } else {
                    a + h * T::from_count(j)
                }
            })
            .collect();
        let mut weights = vec![h; nodes];
        weights[0] = h / T::lit(2.0);
        weights[nodes - 1] = h / T::lit(2.0);
        let inner = InnerProduct::weighted(weights.clone())?;
        Ok(Self {
            a,
            b,
            mu,
            var,
            grid,
            weights,
            targets: [T::one(), mu, var + mu * mu],
            inner,
        })
    }

    /// `[0, 1]`, mean 1/2, variance 1/20: the Beta(2,2) instance.
    pub fn beta22(nodes: usize) -> Result<Self> {
        Self::new(T::zero(), T::one(), T::lit(0.5), T::lit(0.05), nodes)
    }

    pub fn interval(&self) -> (T, T) {
        (self.a, self.b)
    }

    pub fn mean(&self) -> T {
        self.mu
    }

    pub fn variance(&self) -> T {
        self.var
    }

    pub fn nodes(&self) -> usize {
        self.grid.len()
    }

    pub fn grid(&self) -> &[T] {
        &self.grid
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// `(c_1, c_2, c_3) = (1, mu, var + mu^2)`.
    pub fn targets(&self) -> [T; 3] {
        self.targets
    }

    pub fn inner_product(&self) -> &InnerProduct<T> {
        &self.inner
    }

    /// Samples `f` on the grid.
    pub fn sample(&self, f: impl Fn(T) -> T) -> Vector<T> {
        self.grid.iter().map(|&t| f(t)).collect()
    }

    fn power(&self, k: i32) -> Vector<T> {
        self.sample(|t| t.powi(k))
    }

    /// `[G_1, G_2, G_3, G_4]`: the three moment hyperplanes and the orthant.
    pub fn constraints(&self) -> Result<Vec<SetRef<T>>> {
        let mut sets: Vec<SetRef<T>> = Vec::with_capacity(4);
        for (i, &c) in self.targets.iter().enumerate() {
            sets.push(Arc::new(Hyperplane::with_inner(
                self.power(i as i32),
                c,
                self.inner.clone(),
            )?));
        }
        sets.push(Arc::new(Orthant::new(self.nodes())));
        Ok(sets)
    }

    /// Discrete moment residuals `<x, t^(i-1)>_w - c_i`.
    pub fn residuals(&self, x: &Vector<T>) -> Result<[T; 3]> {
        self.inner.check(x.dim())?;
        let mut out = [T::zero(); 3];
        for (i, r) in out.iter_mut().enumerate() {
            *r = self
                .inner
                .inner_slices(self.power(i as i32).as_slice(), x.as_slice())
                - self.targets[i];
        }
        Ok(out)
    }

    /// Smallest sampled value (negative means the orthant is violated).
    pub fn min_value(&self, x: &Vector<T>) -> T {
        x.iter().fold(T::infinity(), |m, &v| m.min(v))
    }

    /// `x_0 = 1` everywhere.
    pub fn constant_start(&self) -> Vector<T> {
        Vector::filled(self.nodes(), T::one())
    }

    /// 1 on the left half of the interval, 1/4 on the right half.
    pub fn step_start(&self) -> Vector<T> {
        let mid = (self.a + self.b) / T::lit(2.0);
        self.sample(|t| if t <= mid { T::one() } else { T::lit(0.25) })
    }

    pub fn start(&self, start: MomentStart) -> Vector<T> {
        match start {
            MomentStart::Constant => self.constant_start(),
            MomentStart::Step => self.step_start(),
        }
    }

    /// Coefficients `theta` of the minimum-norm element `sum_i theta_i t^(i-1)`
    /// of `G_1 ∩ G_2 ∩ G_3` in continuous `L^2[a, b]`, from the Gram system of
    /// exact monomial moments. It also solves the full problem when it is
    /// nonnegative on `[a, b]`; otherwise [`Error::NotValidAsReference`].
    pub fn reference_min_norm_density(&self) -> Result<[T; 3]> {
        let moment =
            |k: i32| (self.b.powi(k + 1) - self.a.powi(k + 1)) / T::from_count(k as usize + 1);
        let gram: Vec<T> = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| moment(i + j))
            .collect();
        let theta = Dense::from_rows(3, gram).solve(&self.targets)?;
        let theta = [theta[0], theta[1], theta[2]];
        let min = quadratic_min(theta, self.a, self.b);
        if min < -T::lit(1e-12) {
            return Err(Error::NotValidAsReference {
                min_value: min.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(theta)
    }

    /// The reference density sampled on the grid.
    pub fn reference_density(&self) -> Result<Vector<T>> {
        let theta = self.reference_min_norm_density()?;
        Ok(self.sample(|t| eval_quadratic(theta, t)))
    }
}

fn eval_quadratic<T: Real>(theta: [T; 3], t: T) -> T {
    theta[0] + t * (theta[1] + t * theta[2])
}

fn quadratic_min<T: Real>(theta: [T; 3], a: T, b: T) -> T {
    let mut m = eval_quadratic(theta, a).min(eval_quadratic(theta, b));
    if theta[2] != T::zero() {
        let v = -theta[1] / (T::lit(2.0) * theta[2]);
        if v > a && v < b {
            m = m.min(eval_quadratic(theta, v));
        }
    }
    m
}

/// Starting densities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MomentStart {
    #[default]
    Constant,
    Step,
}

impl FromStr for MomentStart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant" | "one" => Ok(Self::Constant),
            "step" => Ok(Self::Step),
            other => Err(Error::Config(format!(
                "unknown start '{other}' (expected constant or step)"
            ))),
        }
    }
}

impl fmt::Display for MomentStart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Constant => "constant",
            Self::Step => "step",
        })
    }
}

/// Algorithms run over `[G_1, .., G_4]`. The product methods work in the
/// four-fold product space and report the blockwise mean as the density.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MomentAlgorithm {
    CyclicProjections,
    /// `T_{G_4 G_1} ... T_{G_1 G_2}`.
    CyclicDr,
    /// Anchored at `G_1`.
    AnchoredDr,
    ProductDr,
    /// Diagonal reflected first, anchor `q = 0`.
    ProductAamr {
        alpha: f64,
        beta: f64,
    },
}

impl MomentAlgorithm {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::CyclicProjections => "cyclic-projections",
            Self::CyclicDr => "cyclic-dr",
            Self::AnchoredDr => "anchored-dr",
            Self::ProductDr => "product-dr",
            Self::ProductAamr { .. } => "product-aamr",
        }
    }

    pub fn is_product(&self) -> bool {
        matches!(self, Self::ProductDr | Self::ProductAamr { .. })
    }
}

impl FromStr for MomentAlgorithm {
    type Err = Error;

    /// Parses a tag; AAMR gets `alpha = beta = 0.95`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyclic-projections" => Ok(Self::CyclicProjections),
            "cyclic-dr" => Ok(Self::CyclicDr),
            "anchored-dr" => Ok(Self::AnchoredDr),
            "product-dr" => Ok(Self::ProductDr),
            "product-aamr" => Ok(Self::ProductAamr {
                alpha: 0.95,
                beta: 0.95,
            }),
            other => Err(Error::Config(format!(
                "unknown moment algorithm '{other}' (expected cyclic-projections, cyclic-dr, \
                 anchored-dr, product-dr or product-aamr)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MomentOutcome<T> {
    pub report: SolveReport<T>,
    /// Density estimate on the grid (the shadow of the final iterate).
    pub density: Vector<T>,
}

/// Runs `algorithm` from `start`. Residuals are measured in the weighted norm
/// (replicated across blocks for product methods); snapshots, when
/// `trace_stride > 0`, carry the density in their shadow.
pub fn solve_moments<T: Real>(
    problem: &MomentProblem<T>,
    algorithm: MomentAlgorithm,
    start: MomentStart,
    policy: StoppingPolicy<T>,
    trace_stride: usize,
) -> Result<MomentOutcome<T>> {
    let sets = problem.constraints()?;
    let x0 = problem.start(start);
    let space = ProductSpace::new(sets.clone())?;
    let (op, x0, inner): (Box<dyn Operator<T>>, Vector<T>, InnerProduct<T>) = match algorithm {
        MomentAlgorithm::CyclicProjections => (
            Box::new(CyclicProjections::new(sets)?),
            x0,
            problem.inner.clone(),
        ),
        MomentAlgorithm::CyclicDr => (Box::new(CyclicDr::new(sets)?), x0, problem.inner.clone()),
        MomentAlgorithm::AnchoredDr => (
            Box::new(AnchoredDr::new(sets[0].clone(), sets[1..].to_vec())?),
            x0,
            problem.inner.clone(),
        ),
        MomentAlgorithm::ProductDr => (
            Box::new(space.dr()),
            lift(&x0, 4),
            problem.inner.replicate(4),
        ),
        MomentAlgorithm::ProductAamr { alpha, beta } => (
            Box::new(space.aamr(T::lit(alpha), T::lit(beta), Vector::zeros(space.dim()))?),
            lift(&x0, 4),
            problem.inner.replicate(4),
        ),
    };
    let report = Iteration::new(policy)
        .inner_product(inner)
        .operator_shadow(op.as_ref())
        .trace_stride(trace_stride)
        .run(op.as_ref(), &x0)?;
    let density = match &report.shadow {
        Some(s) => s.clone(),
        None => op.shadow(&report.final_iterate)?,
    };
    Ok(MomentOutcome { report, density })
}

/// The four block densities `27/5 t(1-t)`, `3/5 t(13-9t)`, `3/5 t(9-13t)`,
/// `27/5 t(1-t)` of the Beta(2,2) instance, concatenated.
pub fn fixed_point_quadruple<T: Real>(problem: &MomentProblem<T>) -> Vector<T> {
    let k = T::lit(0.6);
    let blocks = [
        problem.sample(|t| T::lit(5.4) * t * (T::one() - t)),
        problem.sample(|t| k * t * (T::lit(13.0) - T::lit(9.0) * t)),
        problem.sample(|t| k * t * (T::lit(9.0) - T::lit(13.0) * t)),
        problem.sample(|t| T::lit(5.4) * t * (T::one() - t)),
    ];
    blocks.iter().flat_map(|b| b.iter().copied()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixedPointCheck<T> {
    /// `||T(x̄) - x̄||` in the replicated weighted norm.
    pub residual: T,
    /// Max deviation of the blockwise mean of `x̄` from sampled `6t(1-t)`.
    pub mean_error: T,
}

/// One product-space AAMR step (diagonal first, `q = 0`) applied to the
/// sampled quadruple from [`fixed_point_quadruple`]. Only defined for the
/// Beta(2,2) instance; the residual is pure quadrature error.
pub fn verify_aamr_fixed_point<T: Real>(
    problem: &MomentProblem<T>,
    alpha: T,
    beta: T,
) -> Result<FixedPointCheck<T>> {
    let close = |x: T, y: f64| (x - T::lit(y)).abs() <= T::epsilon() * T::lit(16.0);
    if !(close(problem.a, 0.0)
        && close(problem.b, 1.0)
        && close(problem.mu, 0.5)
        && close(problem.var, 0.05))
    {
        return Err(Error::InvalidProblem(
            "the fixed-point quadruple belongs to [0,1] with mean 1/2 and variance 1/20".into(),
        ));
    }
    let space = ProductSpace::new(problem.constraints()?)?;
    let op = space.aamr(alpha, beta, Vector::zeros(space.dim()))?;
    let xbar = fixed_point_quadruple(problem);
    let step = op.apply(&xbar)?;
    let residual = problem.inner.replicate(4).dist(&step, &xbar)?;
    let mean = space.unlift(&xbar)?;
    let target = problem.sample(|t| T::lit(6.0) * t * (T::one() - t));
    Ok(FixedPointCheck {
        residual,
        mean_error: mean.max_abs_diff(&target),
    })
}
