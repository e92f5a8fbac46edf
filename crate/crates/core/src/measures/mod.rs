//! Correlation measures for two-qubit states.
//!
//! Each measure has a general numerical route acting on any
//! [`DensityMatrix`](crate::DensityMatrix) and a closed form specialised to
//! the evolved state family (see [`closed`]). Entropic quantities are in bits.

pub mod closed;
mod concurrence;
mod entropic;
mod geometric;
mod optimizer;
pub mod printed;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use closed::{
    classical_correlation_closed, concurrence_closed, conditional_entropy_closed, geometric_discord_closed,
    mutual_information_closed, quantum_discord_closed,
};
pub use concurrence::{concurrence, concurrence_margin, spin_flip, spin_flip_singular_values};
pub use entropic::{classical_correlation, mutual_information, quantum_discord};
pub use geometric::{geometric_discord, geometric_discord_on};
pub use optimizer::{conditional_entropy, fibonacci_sphere, optimal_conditional_entropy};

/// Numerical value of `measure` on an arbitrary state. `measured` selects the
/// qubit carrying the projective measurement for discord and classical
/// correlation.
pub fn oracle_value(
    measure: Measure,
    rho: &crate::states::DensityMatrix,
    measured: crate::linalg::Subsystem,
    settings: &OptimizerSettings,
) -> Result<MeasureResult> {
    match measure {
        Measure::Concurrence => concurrence(rho),
        Measure::GeometricDiscord => geometric_discord(rho),
        Measure::QuantumDiscord => quantum_discord(rho, measured, settings),
        Measure::MutualInformation => mutual_information(rho),
        Measure::ClassicalCorrelation => classical_correlation(rho, measured, settings),
    }
}

/// Values within this distance below zero are reported as zero.
pub const NEGATIVE_CLAMP: f64 = 1e-9;

/// How a [`MeasureResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Oracle,
}

/// Outcome of the measurement-direction search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerDiagnostics {
    /// Unit vector `n̂` of the optimal projective measurement `(1 ± n̂·σ)/2`.
    pub best_direction: [f64; 3],
    pub grid_points: usize,
    pub refinement_iterations: usize,
    /// Entropy improvement of the last refinement sweep.
    pub final_tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSettings {
    pub grid_points: usize,
    /// Refinement stops once a sweep improves the entropy by less than this.
    pub final_tolerance: f64,
    pub max_refinements: usize,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            grid_points: 1024,
            final_tolerance: 1e-7,
            max_refinements: 100,
        }
    }
}

impl OptimizerSettings {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 32 {
            return Err(Error::InvalidArgument(format!(
                "optimizer needs at least 32 grid points, got {}",
                self.grid_points
            )));
        }
        if !(self.final_tolerance > 0.0 && self.final_tolerance.is_finite()) {
            return Err(Error::InvalidArgument("optimizer tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureResult {
    pub value: f64,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimizer: Option<OptimizerDiagnostics>,
}

impl MeasureResult {
    pub(crate) fn closed(value: f64) -> Self {
        Self {
            value: clamp_small_negative(value),
            method: Method::ClosedForm,
            optimizer: None,
        }
    }

    pub(crate) fn oracle(value: f64) -> Self {
        Self {
            value: clamp_small_negative(value),
            method: Method::Oracle,
            optimizer: None,
        }
    }
}

fn clamp_small_negative(v: f64) -> f64 {
    if (-NEGATIVE_CLAMP..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

/// The correlation quantities tracked by sweeps and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Concurrence,
    #[serde(rename = "dg")]
    GeometricDiscord,
    #[serde(rename = "qd")]
    QuantumDiscord,
    #[serde(rename = "mutual")]
    MutualInformation,
    #[serde(rename = "cc")]
    ClassicalCorrelation,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::Concurrence,
        Measure::GeometricDiscord,
        Measure::QuantumDiscord,
        Measure::MutualInformation,
        Measure::ClassicalCorrelation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Concurrence => "concurrence",
            Measure::GeometricDiscord => "dg",
            Measure::QuantumDiscord => "qd",
            Measure::MutualInformation => "mutual",
            Measure::ClassicalCorrelation => "cc",
        }
    }

    /// Whether the oracle route runs the measurement optimizer.
    pub fn needs_optimizer(self) -> bool {
        matches!(self, Measure::QuantumDiscord | Measure::ClassicalCorrelation)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "concurrence" | "c" => Ok(Measure::Concurrence),
            "dg" | "geometric" | "geometric_discord" => Ok(Measure::GeometricDiscord),
            "qd" | "d" | "discord" | "quantum_discord" => Ok(Measure::QuantumDiscord),
            "mutual" | "mi" | "mutual_information" => Ok(Measure::MutualInformation),
            "cc" | "classical" | "classical_correlation" => Ok(Measure::ClassicalCorrelation),
            other => Err(Error::InvalidArgument(format!("unknown measure '{other}'"))),
        }
    }
}
