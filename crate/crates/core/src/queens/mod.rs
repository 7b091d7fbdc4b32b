//! The `(m, n)`-queens problem: place `m` queens in every row and column of
//! an `n x n` board with at most `m` on any diagonal.
//!
//! Boards are flattened row-major. The four constraint families are
//!
//! * `C1`: every row sums to `m`,
//! * `C2`: every column sums to `m`,
//! * `C3`: every forward (`\`) diagonal sums to at most `m`,
//! * `C4`: every backward (`/`) diagonal sums to at most `m`,
//!
//! and each has a binary ("hatted") variant intersected with `{0,1}^{n x n}`.
//! Only diagonals longer than `m` are constrained; shorter ones cannot
//! exceed the cap on a binary board.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algorithms::{lift, AnchoredDr, CyclicDr, CyclicProjections, Operator, ProductSpace};
use crate::driver::{Iteration, SolveReport, Status, StoppingPolicy};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sets::{
    BinaryBox, BinarySumAtMost, BinarySumEquals, Grouped, SetRef, SumAtMost, SumEquals,
};
use crate::vector::Vector;

mod bench;

pub use bench::{run_benchmark, summarize, trial_seed, BenchConfig, BenchRow, BenchSummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formulation {
    /// `C1 ∩ C2 ∩ C3 ∩ C4 ∩ {0,1}^{n x n}` (five sets).
    F1,
    /// `C1 ∩ C2 ∩ Ĉ3 ∩ Ĉ4`.
    F2,
    /// `Ĉ1 ∩ Ĉ2 ∩ C3 ∩ C4`.
    F3,
    /// `Ĉ1 ∩ Ĉ2 ∩ Ĉ3 ∩ Ĉ4`.
    F4,
}

impl Formulation {
    pub const ALL: [Formulation; 4] = [
        Formulation::F1,
        Formulation::F2,
        Formulation::F3,
        Formulation::F4,
    ];

    pub fn number(self) -> u8 {
        match self {
            Formulation::F1 => 1,
            Formulation::F2 => 2,
            Formulation::F3 => 3,
            Formulation::F4 => 4,
        }
    }

    pub fn from_number(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Formulation::F1),
            2 => Ok(Formulation::F2),
            3 => Ok(Formulation::F3),
            4 => Ok(Formulation::F4),
            _ => Err(Error::Config(format!(
                "unknown formulation {k}; expected 1-4"
            ))),
        }
    }

    /// Number of constraint sets, i.e. copies in the product space.
    pub fn set_count(self) -> usize {
        match self {
            Formulation::F1 => 5,
            _ => 4,
        }
    }
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for Formulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digits = t.strip_prefix(['F', 'f']).unwrap_or(t);
        digits
            .parse::<u8>()
            .map_err(|_| Error::Config(format!("unknown formulation '{s}'")))
            .and_then(Formulation::from_number)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QueensInstance {
    pub n: usize,
    pub m: usize,
    pub formulation: Formulation,
}

impl QueensInstance {
    pub fn new(n: usize, m: usize, formulation: Formulation) -> Result<Self> {
        if n < 3 {
            return Err(Error::Config(format!("board size must be >= 3, got {n}")));
        }
        if m == 0 || m > n {
            return Err(Error::Config(format!("need 1 <= m <= n, got m={m}, n={n}")));
        }
        Ok(Self { n, m, formulation })
    }

    pub fn cells(&self) -> usize {
        self.n * self.n
    }

    pub fn set_count(&self) -> usize {
        self.formulation.set_count()
    }
}

pub fn row_indices(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| (0..n).map(|j| i * n + j).collect())
        .collect()
}

pub fn column_indices(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|j| (0..n).map(|i| i * n + j).collect())
        .collect()
}

/// Forward diagonals `{(i, i + k)}` with more than `m` cells, `k` running
/// from `-(n - m - 1)` to `n - m - 1`.
pub fn forward_diagonals(n: usize, m: usize) -> Vec<Vec<usize>> {
    let reach = n.saturating_sub(m + 1) as isize;
    if n <= m {
        return Vec::new();
    }
    (-reach..=reach)
        .map(|k| {
            (0..n as isize)
                .filter(|&i| (0..n as isize).contains(&(i + k)))
                .map(|i| (i as usize) * n + (i + k) as usize)
                .collect()
        })
        .collect()
}

/// Backward diagonals `{(i, j) : i + j = s}` with more than `m` cells.
pub fn backward_diagonals(n: usize, m: usize) -> Vec<Vec<usize>> {
    if n <= m {
        return Vec::new();
    }
    let (lo, hi) = (m, 2 * n - 2 - m);
    (lo..=hi)
        .map(|s| {
            (0..n)
                .filter(|&i| s >= i && s - i < n)
                .map(|i| i * n + (s - i))
                .collect()
        })
        .collect()
}

fn grouped<T: Real>(
    label: &str,
    n: usize,
    groups: Vec<Vec<usize>>,
    make: impl Fn(usize) -> Result<SetRef<T>>,
) -> Result<SetRef<T>> {
    let groups = groups
        .into_iter()
        .map(|g| make(g.len()).map(|s| (g, s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(Grouped::new(label, n * n, groups)?))
}

/// Which variant of a constraint family to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Relaxed,
    Binary,
}

fn lines<T: Real>(
    label: &str,
    inst: &QueensInstance,
    groups: Vec<Vec<usize>>,
    kind: Kind,
) -> Result<SetRef<T>> {
    let m = inst.m;
    grouped(label, inst.n, groups, |p| -> Result<SetRef<T>> {
        Ok(match kind {
            Kind::Relaxed => Arc::new(SumEquals::new(p, m)?),
            Kind::Binary => Arc::new(BinarySumEquals::new(p, m)?),
        })
    })
}

fn diagonals<T: Real>(
    label: &str,
    inst: &QueensInstance,
    groups: Vec<Vec<usize>>,
    kind: Kind,
) -> Result<SetRef<T>> {
    let m = inst.m;
    grouped(label, inst.n, groups, |p| -> Result<SetRef<T>> {
        Ok(match kind {
            Kind::Relaxed => Arc::new(SumAtMost::new(p, m)?),
            Kind::Binary => Arc::new(BinarySumAtMost::new(p, m)?),
        })
    })
}

/// The constraint sets of the instance's formulation, in order
/// `C1, C2, C3, C4` (plus the binary box for formulation 1).
pub fn build_constraints<T: Real>(inst: &QueensInstance) -> Result<Vec<SetRef<T>>> {
    use Kind::*;
    let (n, m) = (inst.n, inst.m);
    let (lines_kind, diag_kind) = match inst.formulation {
        Formulation::F1 => (Relaxed, Relaxed),
        Formulation::F2 => (Relaxed, Binary),
        Formulation::F3 => (Binary, Relaxed),
        Formulation::F4 => (Binary, Binary),
    };
    let mut sets = vec![
        lines(
            if lines_kind == Binary {
                "Ĉ1(rows)"
            } else {
                "C1(rows)"
            },
            inst,
            row_indices(n),
            lines_kind,
        )?,
        lines(
            if lines_kind == Binary {
                "Ĉ2(cols)"
            } else {
                "C2(cols)"
            },
            inst,
            column_indices(n),
            lines_kind,
        )?,
        diagonals(
            if diag_kind == Binary {
                "Ĉ3(fwd-diag)"
            } else {
                "C3(fwd-diag)"
            },
            inst,
            forward_diagonals(n, m),
            diag_kind,
        )?,
        diagonals(
            if diag_kind == Binary {
                "Ĉ4(bwd-diag)"
            } else {
                "C4(bwd-diag)"
            },
            inst,
            backward_diagonals(n, m),
            diag_kind,
        )?,
    ];
    if inst.formulation == Formulation::F1 {
        sets.push(Arc::new(BinaryBox::new(n * n)));
    }
    Ok(sets)
}

/// A 0/1 board, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Board {
    n: usize,
    cells: Vec<u8>,
}

impl Board {
    pub fn new(n: usize, cells: Vec<u8>) -> Result<Self> {
        if cells.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                found: cells.len(),
            });
        }
        if cells.iter().any(|&c| c > 1) {
            return Err(Error::Config("board cells must be 0 or 1".into()));
        }
        Ok(Self { n, cells })
    }

    pub fn from_rows(rows: &[&[u8]]) -> Result<Self> {
        let n = rows.len();
        Self::new(n, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    /// Rounds each entry: strictly above 1/2 becomes a queen.
    pub fn round<T: Real>(n: usize, x: &[T]) -> Result<Self> {
        let half = T::lit(0.5);
        Self::new(n, x.iter().map(|&v| u8::from(v > half)).collect())
    }

    /// Exact conversion; fails unless every entry is exactly 0 or 1.
    pub fn exact<T: Real>(n: usize, x: &[T]) -> Option<Self> {
        let cells = x
            .iter()
            .map(|&v| {
                if v == T::zero() {
                    Some(0)
                } else if v == T::one() {
                    Some(1)
                } else {
                    None
                }
            })
            .collect::<Option<Vec<u8>>>()?;
        Self::new(n, cells).ok()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.cells[i * self.n + j]
    }

    pub fn to_vector<T: Real>(&self) -> Vector<T> {
        self.cells
            .iter()
            .map(|&c| if c == 1 { T::one() } else { T::zero() })
            .collect()
    }

    pub fn queens(&self) -> usize {
        self.cells.iter().map(|&c| c as usize).sum()
    }
}

impl fmt::Display for Board {
    /// `n` lines of `0`/`1` characters.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.cells.chunks(self.n) {
            for &c in row {
                f.write_str(if c == 1 { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Board {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for r in &rows {
            if r.len() != n {
                return Err(Error::Config(format!(
                    "board row '{r}' does not have {n} cells"
                )));
            }
            for ch in r.chars() {
                cells.push(match ch {
                    '0' | '.' => 0,
                    '1' | 'Q' => 1,
                    other => {
                        return Err(Error::Config(format!(
                            "unexpected board character '{other}'"
                        )))
                    }
                });
            }
        }
        Board::new(n, cells)
    }
}

/// True iff every row and column holds exactly `m` queens and no diagonal
/// holds more than `m`.
pub fn verify_solution(inst: &QueensInstance, board: &Board) -> bool {
    if board.n != inst.n {
        return false;
    }
    let sum = |idx: &Vec<usize>| idx.iter().map(|&i| board.cells[i] as usize).sum::<usize>();
    let m = inst.m;
    row_indices(inst.n).iter().all(|g| sum(g) == m)
        && column_indices(inst.n).iter().all(|g| sum(g) == m)
        && forward_diagonals(inst.n, m).iter().all(|g| sum(g) <= m)
        && backward_diagonals(inst.n, m).iter().all(|g| sum(g) <= m)
}

/// [`verify_solution`] for a real vector: it must be exactly 0/1.
pub fn verify_vector<T: Real>(inst: &QueensInstance, x: &[T]) -> bool {
    x.len() == inst.cells() && Board::exact(inst.n, x).is_some_and(|b| verify_solution(inst, &b))
}

/// Bernoulli(1/2) board, replicated into every product-space block.
pub fn random_start<T: Real>(inst: &QueensInstance, seed: u64) -> Vector<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let board: Vector<T> = (0..inst.cells())
        .map(|_| {
            if rng.gen_bool(0.5) {
                T::one()
            } else {
                T::zero()
            }
        })
        .collect();
    lift(&board, inst.set_count())
}

/// Product-space algorithm used on the queens formulations.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum QueensAlgorithm {
    #[default]
    DouglasRachford,
    GeneralizedDr {
        alpha: f64,
    },
    Aamr {
        alpha: f64,
        beta: f64,
    },
}

#[derive(Clone, Debug)]
pub struct QueensOptions {
    pub algorithm: QueensAlgorithm,
    /// Round-and-verify the shadow every `check_stride` iterations.
    pub check_stride: usize,
    pub trace_stride: usize,
}

impl Default for QueensOptions {
    fn default() -> Self {
        Self {
            algorithm: QueensAlgorithm::DouglasRachford,
            check_stride: 1,
            trace_stride: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct QueensOutcome<T> {
    pub report: SolveReport<T>,
    /// Present only when the rounded shadow passed [`verify_solution`].
    pub board: Option<Board>,
}

/// Runs a product-space method over the formulation's sets from
/// [`random_start`]`(seed)`, stopping as soon as the rounded shadow is a
/// solution.
pub fn solve_queens<T: Real>(
    inst: &QueensInstance,
    seed: u64,
    policy: StoppingPolicy<T>,
    options: &QueensOptions,
) -> Result<QueensOutcome<T>> {
    let space = ProductSpace::new(build_constraints::<T>(inst)?)?;
    let x0 = random_start::<T>(inst, seed);
    let op: Box<dyn Operator<T>> = match options.algorithm {
        QueensAlgorithm::DouglasRachford => Box::new(space.dr()),
        QueensAlgorithm::GeneralizedDr { alpha } => Box::new(space.gdr(T::lit(alpha))?),
        QueensAlgorithm::Aamr { alpha, beta } => {
            Box::new(space.aamr(T::lit(alpha), T::lit(beta), Vector::zeros(space.dim()))?)
        }
    };
    let is_solution =
        |p: &Vector<T>| Board::round(inst.n, p.as_slice()).is_ok_and(|b| verify_solution(inst, &b));
    let report = Iteration::new(policy)
        .operator_shadow(op.as_ref())
        .solution_test(is_solution)
        .check_stride(options.check_stride)
        .trace_stride(options.trace_stride)
        .run(op.as_ref(), &x0)?;
    let board = match (&report.status, &report.shadow) {
        (Status::SolutionFound, Some(p)) => Some(Board::round(inst.n, p.as_slice())?),
        _ => None,
    };
    Ok(QueensOutcome { report, board })
}

/// Outcome of checking the non-solution fixed points of the cyclic methods
/// on the `(2, 3)` instance with formulation 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathologyReport {
    pub x0: Board,
    pub y0: Board,
    /// `P_{C4} P_{C3} P_{Ĉ2} P_{Ĉ1}(X0) = X0`.
    pub x0_fixed_by_cyclic_projections: bool,
    pub y0_fixed_by_cyclic_dr: bool,
    pub y0_fixed_by_anchored_dr: bool,
    pub x0_is_solution: bool,
    pub y0_is_solution: bool,
}

impl PathologyReport {
    /// All fixed-point claims hold and neither board solves the problem.
    pub fn confirmed(&self) -> bool {
        self.x0_fixed_by_cyclic_projections
            && self.y0_fixed_by_cyclic_dr
            && self.y0_fixed_by_anchored_dr
            && !self.x0_is_solution
            && !self.y0_is_solution
    }
}

pub fn pathology_boards() -> (Board, Board) {
    let x0 = Board::from_rows(&[&[0, 1, 0], &[1, 1, 1], &[1, 0, 1]]).expect("3x3 board");
    let y0 = Board::from_rows(&[&[0, 1, 1], &[1, 1, 0], &[0, 1, 1]]).expect("3x3 board");
    (x0, y0)
}

pub fn reproduce_fixed_point_pathologies() -> Result<PathologyReport> {
    let inst = QueensInstance::new(3, 2, Formulation::F3)?;
    let sets = build_constraints::<f64>(&inst)?;
    let (x0, y0) = pathology_boards();
    let xv = x0.to_vector::<f64>();
    let yv = y0.to_vector::<f64>();

    let cyclic = CyclicProjections::new(sets.clone())?;
    let cyclic_dr = CyclicDr::new(sets.clone())?;
    let anchored = AnchoredDr::new(sets[0].clone(), sets[1..].to_vec())?;

    let fixed =
        |op: &dyn Operator<f64>, v: &Vector<f64>| -> Result<bool> { Ok(op.apply(v)? == *v) };
    Ok(PathologyReport {
        x0_fixed_by_cyclic_projections: fixed(&cyclic, &xv)?,
        y0_fixed_by_cyclic_dr: fixed(&cyclic_dr, &yv)?,
        y0_fixed_by_anchored_dr: fixed(&anchored, &yv)?,
        x0_is_solution: verify_solution(&inst, &x0),
        y0_is_solution: verify_solution(&inst, &y0),
        x0,
        y0,
    })
}

/// Membership of `x` in every set of the formulation (absolute tolerance).
pub fn satisfies_all<T: Real>(sets: &[SetRef<T>], x: &Vector<T>) -> bool {
    sets.iter().all(|s| s.contains(x))
}
