use std::fs;
use std::path::Path;
use std::time::Duration;

use feasor::algorithms::{
    Aamr, AveragedProjections, CircumcenteredDr, CyclicProjections, DouglasRachford, GeneralizedDr,
    Operator, Raar,
};
use feasor::driver::{Iteration, SolveReport, Status, StoppingPolicy};
use feasor::moments::{solve_moments, MomentAlgorithm, MomentProblem};
use feasor::queens::{
    run_benchmark, solve_queens, summarize, BenchConfig, QueensAlgorithm, QueensInstance,
    QueensOptions,
};
use feasor::sets::{shared, translate, Ball, Halfspace, Hyperplane, SetRef};
use feasor::Vec64;
use serde_json::{json, Value};

use crate::args::{
    BenchQueensArgs, Demo2dArgs, DemoMethod, QueensMethod, QueensMethodArgs, SolveMomentsArgs,
    SolveQueensArgs, StopArgs,
};
use crate::output::{emit, meta, write_file, Cell, Table};
use crate::CliError;

pub const SEED_ENV: &str = "FEASOR_SEED";

/// `FEASOR_SEED` wins over `--seed` when set.
fn effective_seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) if !v.trim().is_empty() => v.trim().parse().map_err(|_| {
            CliError::Config(format!("{SEED_ENV} must be an unsigned integer, got '{v}'"))
        }),
        _ => Ok(flag),
    }
}

fn policy(stop: &StopArgs) -> StoppingPolicy<f64> {
    StoppingPolicy::default()
        .with_step_tol(stop.tol)
        .with_max_iters(usize::try_from(stop.max_iters).unwrap_or(usize::MAX))
        .with_time_limit(Duration::from_secs_f64(stop.time_limit))
}

fn summary(report: &SolveReport<f64>) -> String {
    format!(
        "status={} iterations={} seconds={:.3}",
        report.status,
        report.iterations,
        report.elapsed.as_secs_f64()
    )
}

/// `k,residual` with a zero residual at `k = 0`.
fn residual_table(report: &SolveReport<f64>) -> Table {
    let mut t = Table::new(["k", "residual"]);
    t.push(vec![Cell::Int(0), Cell::Float(0.0)]);
    for (k, r) in report.residuals.iter().enumerate() {
        t.push(vec![Cell::Int(k as u64 + 1), Cell::Float(*r)]);
    }
    t
}

fn queens_algorithm(args: &QueensMethodArgs) -> QueensAlgorithm {
    match args.algorithm {
        QueensMethod::Dr => QueensAlgorithm::DouglasRachford,
        QueensMethod::Gdr => QueensAlgorithm::GeneralizedDr {
            alpha: args.alpha.unwrap_or(0.8),
        },
        QueensMethod::Aamr => QueensAlgorithm::Aamr {
            alpha: args.alpha.unwrap_or(0.95),
            beta: args.beta.unwrap_or(0.95),
        },
    }
}

fn queens_options(args: &QueensMethodArgs) -> QueensOptions {
    QueensOptions {
        algorithm: queens_algorithm(args),
        check_stride: args.check_stride as usize,
        trace_stride: 0,
    }
}

/// Returns whether a verified board was found.
pub fn solve_queens_cmd(mut args: SolveQueensArgs) -> Result<bool, CliError> {
    args.seed = effective_seed(args.seed)?;
    let inst = QueensInstance::new(args.n as usize, args.m as usize, args.formulation)?;
    let out = solve_queens::<f64>(
        &inst,
        args.seed,
        policy(&args.stop),
        &queens_options(&args.method),
    )?;
    let board = out.board.as_ref().map(|b| b.to_string());
    let extra = json!({
        "status": out.report.status.as_str(),
        "iterations": out.report.iterations,
        "board": board.as_ref().map(|b| b.lines().collect::<Vec<_>>()),
    });
    let table = residual_table(&out.report);
    emit(
        &summary(&out.report),
        &table,
        &meta("solve-queens", &args, extra),
        &args.out,
    )?;
    if let Some(b) = &board {
        print!("{b}");
    }
    Ok(out.board.is_some())
}

pub fn bench_queens_cmd(mut args: BenchQueensArgs) -> Result<bool, CliError> {
    args.seed = effective_seed(args.seed)?;
    let jobs = match args.jobs {
        Some(j) => j as usize,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let config = BenchConfig {
        sizes: args.sizes.iter().map(|&n| n as usize).collect(),
        formulations: args.formulations.clone(),
        m: args.m as usize,
        trials: args.trials as usize,
        policy: policy(&args.stop),
        jobs,
        base_seed: args.seed,
        options: queens_options(&args.method),
    };
    let rows = run_benchmark(&config)?;
    let mut table = Table::new([
        "n",
        "formulation",
        "trial",
        "seed",
        "solved",
        "iterations",
        "seconds",
    ]);
    for r in &rows {
        table.push(vec![
            Cell::Int(r.n as u64),
            Cell::Int(r.formulation.number() as u64),
            Cell::Int(r.trial as u64),
            Cell::Int(r.seed),
            Cell::Bool(r.solved),
            Cell::Int(r.iterations as u64),
            Cell::Float(if args.no_timing { 0.0 } else { r.seconds }),
        ]);
    }
    let stats = summarize(&rows);
    for s in &stats {
        eprintln!(
            "n={} formulation={} solved={}/{} mean_iterations={} mean_seconds={}",
            s.n,
            s.formulation,
            s.solved,
            s.trials,
            s.mean_iterations.map_or("-".into(), |v| format!("{v:.1}")),
            s.mean_seconds.map_or("-".into(), |v| format!("{v:.4}")),
        );
    }
    let solved = rows.iter().filter(|r| r.solved).count();
    let total: f64 = rows.iter().map(|r| r.seconds).sum();
    let line = format!(
        "status=done trials={} solved={} seconds={:.3}",
        rows.len(),
        solved,
        total
    );
    let summary_json: Vec<Value> = stats
        .iter()
        .map(|s| {
            json!({
                "n": s.n,
                "formulation": s.formulation.number(),
                "trials": s.trials,
                "solved": s.solved,
                "mean_iterations": s.mean_iterations,
                "mean_seconds": if args.no_timing { None } else { s.mean_seconds },
            })
        })
        .collect();
    emit(
        &line,
        &table,
        &meta("bench-queens", &args, json!({ "summary": summary_json })),
        &args.out,
    )?;
    Ok(true)
}

fn density_table(grid: &[f64], values: &[f64]) -> Table {
    let mut t = Table::new(["t", "value"]);
    for (&ti, &v) in grid.iter().zip(values) {
        t.push(vec![Cell::Float(ti), Cell::Float(v)]);
    }
    t
}

fn write_snapshots(dir: &Path, grid: &[f64], report: &SolveReport<f64>) -> Result<usize, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut count = 0;
    for snap in &report.snapshots {
        let density = snap.shadow.as_ref().unwrap_or(&snap.iterate);
        let bytes = density_table(grid, density.as_slice()).to_csv()?;
        write_file(&dir.join(format!("density_{:08}.csv", snap.k)), &bytes)?;
        count += 1;
    }
    Ok(count)
}

/// Returns whether the run converged.
pub fn solve_moments_cmd(args: SolveMomentsArgs) -> Result<bool, CliError> {
    let mut algorithm: MomentAlgorithm = args.algorithm.parse()?;
    if let MomentAlgorithm::ProductAamr { .. } = algorithm {
        algorithm = MomentAlgorithm::ProductAamr {
            alpha: args.alpha,
            beta: args.beta,
        };
    }
    let problem = MomentProblem::new(args.a, args.b, args.mu, args.var, args.nodes as usize)?;
    let trace_stride = args.trace_stride as usize;
    if args.snapshot_dir.is_some() && trace_stride == 0 {
        return Err(CliError::Config(
            "--snapshot-dir needs --trace-stride > 0".into(),
        ));
    }
    let out = solve_moments(
        &problem,
        algorithm,
        args.start,
        policy(&args.stop),
        trace_stride,
    )?;
    if let Some(dir) = &args.snapshot_dir {
        write_snapshots(dir, problem.grid(), &out.report)?;
    }
    let residuals = problem.residuals(&out.density)?;
    let extra = json!({
        "status": out.report.status.as_str(),
        "iterations": out.report.iterations,
        "moment_residuals": residuals,
        "min_value": problem.min_value(&out.density),
    });
    let table = density_table(problem.grid(), out.density.as_slice());
    emit(
        &summary(&out.report),
        &table,
        &meta("solve-moments", &args, extra),
        &args.out,
    )?;
    Ok(out.report.status == Status::Converged)
}

fn parse_numbers(flag: &str, text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .ok()
        .filter(|v| v.iter().all(|x| x.is_finite()))
        .ok_or_else(|| {
            CliError::Config(format!(
                "{flag}: expected comma-separated numbers, got '{text}'"
            ))
        })
}

fn point(flag: &str, text: &str) -> Result<Vec64, CliError> {
    let v = parse_numbers(flag, text)?;
    if v.len() != 2 {
        return Err(CliError::Config(format!(
            "{flag}: expected 2 coordinates, got {}",
            v.len()
        )));
    }
    Ok(Vec64::from_f64(&v))
}

fn planar_set(flag: &str, spec: &str) -> Result<SetRef<f64>, CliError> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Config(format!("{flag}: expected kind:numbers, got '{spec}'")))?;
    let v = parse_numbers(flag, rest)?;
    if v.len() != 3 {
        return Err(CliError::Config(format!(
            "{flag}: expected 3 numbers, got {}",
            v.len()
        )));
    }
    let bad = |e: feasor::Error| CliError::Config(format!("{flag}: {e}"));
    let normal = Vec64::from_f64(&v[..2]);
    Ok(match kind {
        "line" => shared(Hyperplane::new(normal, v[2]).map_err(bad)?),
        "halfspace" => shared(Halfspace::new(normal, v[2]).map_err(bad)?),
        "ball" => translate(shared(Ball::new(2, v[2]).map_err(bad)?), normal).map_err(bad)?,
        other => {
            return Err(CliError::Config(format!(
                "{flag}: unknown set kind '{other}' (expected line, halfspace or ball)"
            )))
        }
    })
}

/// Trace emission only: any completed run succeeds.
pub fn demo_2d_cmd(args: Demo2dArgs) -> Result<bool, CliError> {
    let a = planar_set("--set-a", &args.set_a)?;
    let b = planar_set("--set-b", &args.set_b)?;
    let x0 = point("--x0", &args.x0)?;
    let op: Box<dyn Operator<f64>> = match args.algorithm {
        DemoMethod::Dr => Box::new(DouglasRachford::new(a, b)?),
        DemoMethod::Gdr => Box::new(GeneralizedDr::new(a, b, args.alpha)?),
        DemoMethod::Raar => Box::new(Raar::new(a, b, args.beta)?),
        DemoMethod::Cdr => Box::new(CircumcenteredDr::new(a, b)?),
        DemoMethod::Aamr => Box::new(Aamr::new(
            a,
            b,
            args.alpha,
            args.beta,
            point("--q", &args.q)?,
        )?),
        DemoMethod::CyclicProjections => Box::new(CyclicProjections::new(vec![a, b])?),
        DemoMethod::AveragedProjections => Box::new(AveragedProjections::new(vec![a, b])?),
    };
    let mut policy = policy(&args.stop);
    if let Some(r) = args.divergence_radius {
        policy = policy.with_divergence_radius(r);
    }
    let report = Iteration::new(policy)
        .operator_shadow(op.as_ref())
        .trace_stride(1)
        .run(op.as_ref(), &x0)?;

    let mut table = Table::new(["k", "residual", "coord_0", "coord_1"]);
    for snap in &report.snapshots {
        let residual = if snap.k == 0 {
            0.0
        } else {
            report.residuals[snap.k - 1]
        };
        table.push(vec![
            Cell::Int(snap.k as u64),
            Cell::Float(residual),
            Cell::Float(snap.iterate[0]),
            Cell::Float(snap.iterate[1]),
        ]);
    }
    let extra = json!({
        "status": report.status.as_str(),
        "iterations": report.iterations,
        "label": op.label(),
        "shadow": report.shadow.as_ref().map(|s| s.as_slice().to_vec()),
        "displacement_estimate": report.displacement_estimate.as_ref().map(|d| d.as_slice().to_vec()),
    });
    emit(
        &summary(&report),
        &table,
        &meta("demo-2d", &args, extra),
        &args.out,
    )?;
    Ok(true)
}
