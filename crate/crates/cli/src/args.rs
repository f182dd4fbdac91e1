use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Monte Carlo experiments with deterministic CSV output.
#[derive(Debug, Parser)]
#[command(name = "stattrials", version, args_override_self = true)]
pub struct Cli {
    /// Root seed; every result is a pure function of it and the parameters.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Write CSV here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Histogram bin count.
    #[arg(long, global = true, default_value_t = 50)]
    pub bins: usize,

    /// Worker threads (0 = one per core). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// `key=value` parameter file; flags given on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Where to write the run manifest. Defaults to `<out>.manifest`, or
    /// standard error when writing CSV to standard output.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One-dimensional random walk: final positions or the MSD curve.
    Walk(WalkArgs),
    /// Pendulum in a gusty horizontal air stream.
    Pendulum(PendulumArgs),
    /// Deflection of charged particles by fixed repulsive centers.
    Scatter(ScatterArgs),
    /// Spanning probability of site percolation on an M x M grid.
    Percolation(PercolationArgs),
    /// Total time of a process whose failed operations are repeated.
    Process(ProcessArgs),
    /// Stop-and-wait ARQ throughput for one frame length.
    Arq(ArqArgs),
    /// ARQ throughput against frame length.
    ArqSweep(ArqSweepArgs),
    /// Empirical ARQ capacity against the binary symmetric channel formula.
    Capacity(CapacityArgs),
    /// Error rate of a channel given by a stochastic matrix.
    SymbolChannel(SymbolChannelArgs),
}

#[derive(Debug, Args)]
pub struct WalkArgs {
    /// Steps per walk; output is one `trial,z` row per trial.
    #[arg(long, default_value_t = 100)]
    pub steps: u64,
    /// Comma-separated step counts; output is the `N,msd,stderr` curve.
    #[arg(long, value_delimiter = ',')]
    pub steps_list: Option<Vec<u64>>,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PendulumReport {
    Summary,
    Trajectory,
    Histogram,
}

#[derive(Debug, Args)]
pub struct PendulumArgs {
    #[arg(long, default_value_t = 9.81)]
    pub gravity: f64,
    #[arg(long, default_value_t = 1.0)]
    pub length: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long, default_value_t = 0.5)]
    pub damping: f64,
    #[arg(long, default_value_t = 0.5)]
    pub drag_coeff: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub wind_mean: f64,
    #[arg(long, default_value_t = 1.0)]
    pub wind_halfwidth: f64,
    #[arg(long, default_value_t = 0.5)]
    pub wind_refresh: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 100.0)]
    pub t_total: f64,
    #[arg(long, default_value_t = 10.0)]
    pub burn_in: f64,
    #[arg(long, value_enum, default_value_t = PendulumReport::Summary)]
    pub report: PendulumReport,
    /// Keep every n-th state in the trajectory report.
    #[arg(long, default_value_t = 10)]
    pub record_every: usize,
    /// Histogram lower edge (default: mean - 5 std).
    #[arg(long, allow_negative_numbers = true)]
    pub hist_lo: Option<f64>,
    /// Histogram upper edge (default: mean + 5 std).
    #[arg(long, allow_negative_numbers = true)]
    pub hist_hi: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Geometry {
    Single,
    Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScatterReport {
    Histogram,
    Particles,
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    /// One center at the origin, or two centers at (0, +-separation/2).
    #[arg(long, value_enum, default_value_t = Geometry::Pair)]
    pub geometry: Geometry,
    #[arg(long, default_value_t = 1.0)]
    pub separation: f64,
    /// Coupling kqQ of each center.
    #[arg(long, default_value_t = 1.0)]
    pub strength: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    /// Launch speed v0.
    #[arg(long, default_value_t = 1.0)]
    pub speed: f64,
    #[arg(long, default_value_t = -100.0, allow_negative_numbers = true)]
    pub start_x: f64,
    #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
    pub stop_x: f64,
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    pub b_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub b_max: f64,
    #[arg(long, default_value_t = 0.02)]
    pub dt: f64,
    #[arg(long, default_value_t = 2_000_000)]
    pub max_steps: u64,
    #[arg(long, visible_alias = "trials", default_value_t = 1000)]
    pub particles: u64,
    #[arg(long, default_value_t = 1e-4)]
    pub energy_tolerance: f64,
    #[arg(long, value_enum, default_value_t = ScatterReport::Histogram)]
    pub report: ScatterReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PercolationReport {
    Curve,
    Grid,
    Labels,
}

#[derive(Debug, Args)]
pub struct PercolationArgs {
    /// Grid side M.
    #[arg(long, default_value_t = 64)]
    pub size: usize,
    /// Occupation probabilities; `grid` and `labels` use the first one.
    #[arg(long, value_delimiter = ',', default_values_t = default_percolation_p())]
    pub p_list: Vec<f64>,
    #[arg(long, default_value_t = 500)]
    pub trials: u64,
    #[arg(long, value_enum, default_value_t = PercolationReport::Curve)]
    pub report: PercolationReport,
}

fn default_percolation_p() -> Vec<f64> {
    (0..=20).map(|k| f64::from(k) / 20.0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProcessReport {
    Summary,
    Trials,
}

#[derive(Debug, Args)]
pub struct ProcessArgs {
    #[arg(long, value_delimiter = ',', default_values_t = vec![1.6, 2.7, 1.4, 3.8, 2.6])]
    pub durations: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.6, 0.7, 0.4, 0.8, 0.6])]
    pub success_probs: Vec<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, value_enum, default_value_t = ProcessReport::Summary)]
    pub report: ProcessReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Abstract,
    #[value(name = "bit_exact", alias = "bit-exact")]
    BitExact,
}

impl From<Model> for stattrials_core::arq_channel::ErrorModel {
    fn from(m: Model) -> Self {
        match m {
            Model::Abstract => Self::Abstract,
            Model::BitExact => Self::BitExact,
        }
    }
}

#[derive(Debug, Args)]
pub struct ArqArgs {
    /// Frame length D in bits, parity included.
    #[arg(long, default_value_t = 8)]
    pub frame_len: u32,
    /// Bit error probabilities, one output row each.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.001, 0.01, 0.02, 0.05])]
    pub bit_error_p: Vec<f64>,
    /// Frames N_K to deliver.
    #[arg(long, default_value_t = 500)]
    pub frames: u64,
    #[arg(long, value_enum, default_value_t = Model::Abstract)]
    pub model: Model,
    /// Draw uniforms on a k/q grid (1000 mimics random(1000)/1000).
    #[arg(long)]
    pub quantize: Option<u32>,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_attempts: u64,
}

#[derive(Debug, Args)]
pub struct ArqSweepArgs {
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.02, 0.05, 0.1, 0.3])]
    pub bit_error_p: Vec<f64>,
    #[arg(long, default_value_t = 2)]
    pub d_min: u32,
    #[arg(long, default_value_t = 16)]
    pub d_max: u32,
    #[arg(long, default_value_t = 500)]
    pub frames: u64,
    #[arg(long, value_enum, default_value_t = Model::Abstract)]
    pub model: Model,
    #[arg(long)]
    pub quantize: Option<u32>,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_attempts: u64,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    #[arg(long, value_delimiter = ',', default_values_t = default_capacity_p())]
    pub p_list: Vec<f64>,
    #[arg(long, default_value_t = 2)]
    pub d_min: u32,
    #[arg(long, default_value_t = 64)]
    pub d_max: u32,
    #[arg(long, default_value_t = 10_000)]
    pub frames: u64,
    #[arg(long, value_enum, default_value_t = Model::Abstract)]
    pub model: Model,
    #[arg(long)]
    pub quantize: Option<u32>,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_attempts: u64,
}

fn default_capacity_p() -> Vec<f64> {
    (0..10).map(|k| f64::from(k) * 0.05).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SymbolReport {
    Summary,
    Running,
    Confusion,
}

#[derive(Debug, Args)]
pub struct SymbolChannelArgs {
    /// Input symbol probabilities.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.3, 0.25, 0.45])]
    pub source: Vec<f64>,
    /// Row-stochastic matrix, rows separated by `;`, entries by `,`.
    #[arg(long, default_value = "0.7,0.1,0.1,0.1;0.1,0.8,0.1,0;0.2,0.2,0.5,0.1")]
    pub matrix: String,
    #[arg(long, default_value_t = 3000)]
    pub trials: u64,
    #[arg(long, default_value_t = 200)]
    pub window: usize,
    #[arg(long, default_value_t = 0.02)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value_t = SymbolReport::Summary)]
    pub report: SymbolReport,
}
