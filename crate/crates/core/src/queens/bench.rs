//! Repeated random-start runs over a grid of board sizes and formulations.

use std::time::Duration;

use rayon::prelude::*;

use crate::driver::{Status, StoppingPolicy};
use crate::error::{Error, Result};
use crate::queens::{solve_queens, Formulation, QueensInstance, QueensOptions};

/// Benchmark grid. Every `(n, formulation, trial)` triple is one run of
/// [`solve_queens`] with `m` queens per line.
#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub formulations: Vec<Formulation>,
    pub m: usize,
    pub trials: usize,
    pub policy: StoppingPolicy<f64>,
    /// Worker threads; `0` uses rayon's default.
    pub jobs: usize,
    pub base_seed: u64,
    pub options: QueensOptions,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: vec![10, 20],
            formulations: Formulation::ALL.to_vec(),
            m: 2,
            trials: 20,
            policy: StoppingPolicy::default().with_time_limit(Duration::from_secs(300)),
            jobs: 0,
            base_seed: 0,
            options: QueensOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub formulation: Formulation,
    pub trial: usize,
    pub seed: u64,
    pub solved: bool,
    pub iterations: usize,
    pub seconds: f64,
}

/// Aggregate for one `(n, formulation)` cell; averages are taken over the
/// solved runs only and are `None` when nothing was solved.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchSummary {
    pub n: usize,
    pub formulation: Formulation,
    pub trials: usize,
    pub solved: usize,
    pub mean_iterations: Option<f64>,
    pub mean_seconds: Option<f64>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one benchmark run, a hash of the base seed and the run's key.
pub fn trial_seed(base: u64, n: usize, formulation: Formulation, trial: usize) -> u64 {
    [n as u64, formulation.number() as u64, trial as u64]
        .into_iter()
        .fold(splitmix64(base), |h, v| splitmix64(h ^ v))
}

/// Runs every trial, in parallel when `jobs != 1`. Rows come back ordered by
/// `(n, formulation, trial)` whatever the scheduling.
pub fn run_benchmark(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    config.policy.validate()?;
    let mut keys = Vec::new();
    for &n in &config.sizes {
        for &f in &config.formulations {
            let inst = QueensInstance::new(n, config.m, f)?;
            keys.extend((0..config.trials).map(|t| (inst, t)));
        }
    }
    let run_one = |(inst, trial): &(QueensInstance, usize)| -> Result<BenchRow> {
        let seed = trial_seed(config.base_seed, inst.n, inst.formulation, *trial);
        let out = solve_queens::<f64>(inst, seed, config.policy.clone(), &config.options)?;
        Ok(BenchRow {
            n: inst.n,
            formulation: inst.formulation,
            trial: *trial,
            seed,
            solved: out.report.status == Status::SolutionFound,
            iterations: out.report.iterations,
            seconds: out.report.elapsed.as_secs_f64(),
        })
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| keys.par_iter().map(run_one).collect())
}

/// Per-`(n, formulation)` aggregates in first-appearance order.
pub fn summarize(rows: &[BenchRow]) -> Vec<BenchSummary> {
    let mut out: Vec<BenchSummary> = Vec::new();
    let mut sums: Vec<(f64, f64)> = Vec::new();
    for r in rows {
        let idx = match out
            .iter()
            .position(|s| s.n == r.n && s.formulation == r.formulation)
        {
            Some(i) => i,
            None => {
                out.push(BenchSummary {
                    n: r.n,
                    formulation: r.formulation,
                    trials: 0,
                    solved: 0,
                    mean_iterations: None,
                    mean_seconds: None,
                });
                sums.push((0.0, 0.0));
                out.len() - 1
            }
        };
        out[idx].trials += 1;
        if r.solved {
            out[idx].solved += 1;
            sums[idx].0 += r.iterations as f64;
            sums[idx].1 += r.seconds;
        }
    }
    for (s, (it, sec)) in out.iter_mut().zip(sums) {
        if s.solved > 0 {
            s.mean_iterations = Some(it / s.solved as f64);
            s.mean_seconds = Some(sec / s.solved as f64);
        }
    }
    out
}
