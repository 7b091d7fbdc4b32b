use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use feasor::moments::MomentStart;
use feasor::queens::Formulation;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "feasor",
    version,
    about = "Projection methods for feasibility problems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve one (m, n)-queens instance with a product-space method.
    SolveQueens(SolveQueensArgs),
    /// Run the random-start queens benchmark.
    BenchQueens(BenchQueensArgs),
    /// Solve the discretized moment problem.
    SolveMoments(SolveMomentsArgs),
    /// Trace a two-set method in the plane.
    #[command(name = "demo-2d")]
    Demo2d(Demo2dArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct StopArgs {
    /// Stop when ||x_{k+1} - x_k|| drops to this value.
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    pub tol: f64,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_iters: u64,
    /// Wall-clock budget in seconds; 0 disables it.
    #[arg(long, default_value_t = 300.0, value_parser = non_negative)]
    pub time_limit: f64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OutputArgs {
    /// Write the data here instead of after the summary on stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QueensMethod {
    Dr,
    Gdr,
    Aamr,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct QueensMethodArgs {
    #[arg(long, value_enum, default_value_t = QueensMethod::Dr)]
    pub algorithm: QueensMethod,
    /// GDR / AAMR averaging parameter (default 0.8 for GDR, 0.95 for AAMR).
    #[arg(long, value_parser = positive)]
    pub alpha: Option<f64>,
    /// AAMR reflection parameter (default 0.95).
    #[arg(long, value_parser = positive)]
    pub beta: Option<f64>,
    /// Round-and-verify the shadow every this many iterations.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub check_stride: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SolveQueensArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
    pub n: u64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    /// 1-4 (or F1-F4).
    #[arg(long, default_value = "3", value_parser = formulation)]
    #[serde(serialize_with = "ser_formulation")]
    pub formulation: Formulation,
    /// Overridden by FEASOR_SEED when that is set.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub method: QueensMethodArgs,
    #[command(flatten)]
    pub stop: StopArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BenchQueensArgs {
    #[arg(long, value_delimiter = ',', default_value = "10,20", value_parser = clap::value_parser!(u64).range(3..))]
    pub sizes: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4", value_parser = formulation)]
    #[serde(serialize_with = "ser_formulations")]
    pub formulations: Vec<Formulation>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Base seed mixed into every trial's seed; overridden by FEASOR_SEED.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: number of processors).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    #[serde(skip)]
    pub jobs: Option<u64>,
    /// Write 0 in the `seconds` column so repeated runs are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
    #[command(flatten)]
    pub method: QueensMethodArgs,
    #[command(flatten)]
    pub stop: StopArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SolveMomentsArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long = "var", value_parser = positive)]
    pub var: f64,
    /// Grid nodes.
    #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u64).range(3..))]
    pub nodes: u64,
    /// cyclic-projections, cyclic-dr, anchored-dr, product-dr or product-aamr.
    #[arg(long, default_value = "cyclic-projections")]
    pub algorithm: String,
    #[arg(long, default_value_t = 0.95, value_parser = positive)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.95, value_parser = positive)]
    pub beta: f64,
    /// constant (x0 = 1) or step (1 then 1/4).
    #[arg(long, default_value = "constant", value_parser = start)]
    #[serde(serialize_with = "ser_display")]
    pub start: MomentStart,
    /// Record the density every this many iterations (0 = final only).
    #[arg(long, default_value_t = 0)]
    pub trace_stride: u64,
    /// Directory receiving one `t,value` CSV per recorded snapshot.
    #[arg(long)]
    pub snapshot_dir: Option<PathBuf>,
    #[command(flatten)]
    pub stop: StopArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DemoMethod {
    Dr,
    Gdr,
    Raar,
    Cdr,
    Aamr,
    CyclicProjections,
    AveragedProjections,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Demo2dArgs {
    /// `line:a1,a2,b` ({a.x = b}), `halfspace:a1,a2,b` ({a.x <= b}) or `ball:cx,cy,r`.
    #[arg(long, default_value = "line:0,1,0")]
    pub set_a: String,
    #[arg(long, default_value = "line:1,-1,0")]
    pub set_b: String,
    #[arg(long, default_value = "1,0", allow_negative_numbers = true)]
    pub x0: String,
    #[arg(long, value_enum, default_value_t = DemoMethod::Dr)]
    pub algorithm: DemoMethod,
    /// GDR / AAMR averaging parameter.
    #[arg(long, default_value_t = 0.8, value_parser = positive)]
    pub alpha: f64,
    /// RAAR / AAMR parameter.
    #[arg(long, default_value_t = 0.4, value_parser = positive)]
    pub beta: f64,
    /// AAMR anchor point.
    #[arg(long, default_value = "0,0", allow_negative_numbers = true)]
    pub q: String,
    /// Stop as diverging once ||x_k|| exceeds this.
    #[arg(long, value_parser = positive)]
    pub divergence_radius: Option<f64>,
    #[command(flatten)]
    pub stop: StopArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("expected a positive number, got '{s}'")),
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("expected a non-negative number, got '{s}'")),
    }
}

fn formulation(s: &str) -> Result<Formulation, String> {
    s.parse().map_err(|e: feasor::Error| e.to_string())
}

fn start(s: &str) -> Result<MomentStart, String> {
    s.parse().map_err(|e: feasor::Error| e.to_string())
}

fn ser_formulation<S: serde::Serializer>(f: &Formulation, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u8(f.number())
}

fn ser_formulations<S: serde::Serializer>(f: &[Formulation], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(f.iter().map(|f| f.number()))
}

fn ser_display<S: serde::Serializer, D: std::fmt::Display>(v: &D, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
