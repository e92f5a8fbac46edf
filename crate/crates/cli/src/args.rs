use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcorr::{Axis, Measure, Subsystem};

#[derive(Debug, Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Quantum correlations of two-qubit states under Pauli noise"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Worker threads for sweeps (default: all cores)
    #[arg(long, global = true, env = "QCORR_THREADS")]
    pub threads: Option<usize>,
    /// Measurement directions in the discord search grid
    #[arg(long, global = true, default_value_t = 1024)]
    pub grid_points: usize,
    /// Stop refining the measurement once a sweep gains less than this
    #[arg(long, global = true, default_value_t = 1e-7)]
    pub tolerance: f64,
    /// Significant digits in printed numbers, 6 to 17
    #[arg(long, global = true, default_value_t = 9)]
    pub precision: usize,
    /// Qubit carrying the projective measurement for discord
    #[arg(long, global = true, value_enum, default_value_t = Side::A)]
    pub measured_side: Side,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the initial state and its correlations
    State(StateArgs),
    /// Evolve the state under one Pauli channel
    Evolve(EvolveArgs),
    /// Tabulate measures over a (theta, gamma t) grid as CSV
    Sweep(SweepArgs),
    /// Find the entanglement sudden-death time (half-life for other measures)
    Deathtime(DeathArgs),
    /// Run the cross-check suite
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<Side> for Subsystem {
    fn from(s: Side) -> Self {
        match s {
            Side::A => Subsystem::A,
            Side::B => Subsystem::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Analytic,
    Kraus,
    Rk4,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// Mixing angle: radians, or tokens like pi/8
    #[arg(long, allow_hyphen_values = true)]
    pub theta: String,
    /// Read plain numbers as degrees
    #[arg(long)]
    pub degrees: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[arg(long, value_parser = parse_axis)]
    pub channel: Axis,
    /// Mixing angle of the initial state (ignored with --input)
    #[arg(long, allow_hyphen_values = true, required_unless_present = "input")]
    pub theta: Option<String>,
    #[arg(long)]
    pub degrees: bool,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Evolution time; equals gamma t when --gamma is omitted
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, value_enum, default_value_t = Method::Analytic)]
    pub method: Method,
    /// RK4 steps
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    /// Compare against an independent route and print the deviation
    #[arg(long)]
    pub check: bool,
    /// Initial state as JSON ({"dim":4,"re":[..],"im":[..]}); `-` reads stdin
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Side::B)]
    pub noisy_qubit: Side,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_axis)]
    pub channel: Axis,
    /// Comma-separated subset of concurrence,dg,qd,mutual,cc
    #[arg(long, value_delimiter = ',', value_parser = parse_measure, default_value = "concurrence,dg,qd")]
    pub measures: Vec<Measure>,
    /// Comma-separated angles, e.g. pi/8,pi/4,3pi/8
    #[arg(long)]
    pub thetas: String,
    #[arg(long)]
    pub degrees: bool,
    #[arg(long, default_value_t = 0.0)]
    pub tmin: f64,
    #[arg(long)]
    pub tmax: f64,
    /// Number of time points including both ends
    #[arg(long, default_value_t = 61)]
    pub tsteps: usize,
    /// Coupling; times are gamma t when omitted
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Also evaluate the numerical oracle (slow for qd and cc)
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DeathArgs {
    #[arg(long, value_parser = parse_axis)]
    pub channel: Axis,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: String,
    #[arg(long)]
    pub degrees: bool,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, value_parser = parse_measure, default_value = "concurrence")]
    pub measure: Measure,
    /// Concurrence counts as dead below minus this value
    #[arg(long, default_value_t = qcorr::dynamics::DEATH_THRESHOLD)]
    pub threshold: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub json: bool,
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    s.parse().map_err(|e: qcorr::Error| e.to_string())
}

fn parse_measure(s: &str) -> Result<Measure, String> {
    s.parse().map_err(|e: qcorr::Error| e.to_string())
}
