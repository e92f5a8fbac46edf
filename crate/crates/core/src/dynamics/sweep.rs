use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{analytic_evolve, decay_factor, Axis, ChannelSpec};
use crate::error::{Error, Result};
use crate::linalg::Subsystem;
use crate::measures::{closed::measure_at, oracle_value, Measure, OptimizerSettings};
use crate::states::StateParams;

pub const CSV_HEADER: &str = "channel,measure,theta,gamma_t,value_closed,value_oracle";

/// Axes of a `(θ, γt)` sweep for one channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub thetas: Vec<f64>,
    /// Dimensionless times `γt`.
    pub gamma_times: Vec<f64>,
    pub channel: ChannelSpec,
    pub measures: Vec<Measure>,
}

impl SweepGrid {
    pub fn new(thetas: Vec<f64>, gamma_times: Vec<f64>, channel: ChannelSpec, measures: Vec<Measure>) -> Result<Self> {
        let grid = Self {
            thetas,
            gamma_times,
            channel,
            measures,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        check_axis("thetas", &self.thetas)?;
        check_axis("times", &self.gamma_times)?;
        if let Some(bad) = self
            .thetas
            .iter()
            .find(|&&t| !(0.0..=std::f64::consts::PI).contains(&t))
        {
            return Err(Error::InvalidArgument(format!("theta {bad} outside [0, π]")));
        }
        if self.gamma_times[0] < 0.0 {
            return Err(Error::InvalidArgument("times must be non-negative".into()));
        }
        if self.measures.is_empty() {
            return Err(Error::InvalidArgument("no measures requested".into()));
        }
        Ok(())
    }

    /// Number of rows the sweep produces.
    pub fn len(&self) -> usize {
        self.thetas.len() * self.gamma_times.len() * self.measures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_axis(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidArgument(format!("{name} must not be empty")));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!("{name} must be finite")));
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(format!("{name} must be strictly increasing")));
    }
    Ok(())
}

/// `steps` evenly spaced values from `start` to `end` inclusive.
pub fn uniform_times(start: f64, end: f64, steps: usize) -> Result<Vec<f64>> {
    match steps {
        0 => Err(Error::InvalidArgument("need at least one time step".into())),
        1 => Ok(vec![start]),
        _ if end <= start => Err(Error::InvalidArgument(format!("empty time range [{start}, {end}]"))),
        _ => {
            let h = (end - start) / (steps - 1) as f64;
            Ok((0..steps)
                .map(|k| if k + 1 == steps { end } else { start + h * k as f64 })
                .collect())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    /// Also evaluate the numerical oracle on the evolved matrix.
    pub oracle: bool,
    pub settings: OptimizerSettings,
    pub measured: Subsystem,
    /// Worker count; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            oracle: false,
            settings: OptimizerSettings::default(),
            measured: Subsystem::A,
            threads: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub channel: Axis,
    pub measure: Measure,
    pub theta: f64,
    pub gamma_t: f64,
    pub value_closed: f64,
    pub value_oracle: Option<f64>,
}

/// Evaluates every `(measure, θ, γt)` cell. Rows come back measure-major,
/// then by θ, then by time, independent of the worker count.
pub fn sweep(grid: &SweepGrid, options: &SweepOptions) -> Result<Vec<SweepRow>> {
    grid.validate()?;
    options.settings.validate()?;
    let cells: Vec<(Measure, f64, f64)> = grid
        .measures
        .iter()
        .flat_map(|&m| {
            grid.thetas
                .iter()
                .flat_map(move |&th| grid.gamma_times.iter().map(move |&gt| (m, th, gt)))
        })
        .collect();

    let run = || {
        cells
            .par_iter()
            .map(|&(m, th, gt)| cell(grid, options, m, th, gt))
            .collect()
    };
    match options.threads {
        None => run(),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::InvalidArgument(format!("cannot start {n} workers: {e}")))?;
            pool.install(run)
        }
    }
}

fn cell(grid: &SweepGrid, options: &SweepOptions, measure: Measure, theta: f64, gamma_t: f64) -> Result<SweepRow> {
    let channel = &grid.channel;
    let params = StateParams::new(theta)?;
    let t = gamma_t / channel.gamma;
    let mu = decay_factor(channel, t)?;
    let value_closed = measure_at(measure, &params, Some(channel.axis), mu);
    let value_oracle = if options.oracle {
        let rho = analytic_evolve(&params, channel, t)?;
        Some(oracle_value(measure, &rho, options.measured, &options.settings)?.value)
    } else {
        None
    };
    Ok(SweepRow {
        channel: channel.axis,
        measure,
        theta,
        gamma_t,
        value_closed,
        value_oracle,
    })
}

/// Rounds to `precision` significant digits and prints the shortest decimal
/// that reads back as the rounded value. Never uses exponent notation.
pub fn format_value(v: f64, precision: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let digits = precision.clamp(1, 17);
    let rounded: f64 = format!("{:.*e}", digits - 1, v).parse().expect("round trip");
    if rounded == 0.0 {
        "0".to_string()
    } else {
        rounded.to_string()
    }
}

pub fn write_csv<W: Write>(out: &mut W, rows: &[SweepRow], precision: usize) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.channel,
            r.measure,
            format_value(r.theta, precision),
            format_value(r.gamma_t, precision),
            format_value(r.value_closed, precision),
            r.value_oracle.map(|v| format_value(v, precision)).unwrap_or_default(),
        )?;
    }
    Ok(())
}
