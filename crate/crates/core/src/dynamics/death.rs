use serde::{Deserialize, Serialize};

use crate::channels::{analytic_evolve, decay_factor, Axis, ChannelSpec};
use crate::error::{Error, Result};
use crate::measures::{closed::measure_at, concurrence_margin, printed, Measure};
use crate::states::StateParams;

pub const DEATH_THRESHOLD: f64 = 1e-12;
/// Largest `γt` searched before giving up.
pub const BRACKET_CAP: f64 = 50.0;
/// Bisection stops once the bracket is this narrow (in units of `t`).
pub const TIME_RESOLUTION: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeathTimeResult {
    /// First time the measure is gone, or `None` if it survives to the cap.
    pub time: Option<f64>,
    pub bracket: (f64, f64),
    pub iterations: usize,
    pub closed_form_time: Option<f64>,
    pub diagnostic: Option<String>,
}

/// Sudden-death time from the closed forms: `(1/γ) ln √(ξ/η)` under σx and
/// `(1/4γ) ln (1 − 2 csc²θ)²` under σz. `None` under σy or when `η = 0`.
pub fn closed_form_death_time(params: &StateParams, channel: &ChannelSpec) -> Option<f64> {
    if params.eta <= 0.0 {
        return None;
    }
    match channel.axis {
        Axis::X => Some(printed::sigma_x_death_time(params, channel.gamma)),
        Axis::Z => Some(printed::sigma_z_death_time(params.theta, channel.gamma)),
        Axis::Y => None,
    }
}

/// Time at which the concurrence of the evolved state reaches zero, found by
/// doubling out from `t = 1/γ` and bisecting on the Wootters oracle.
///
/// The state counts as dead once `χ₁ − χ₂ − χ₃ − χ₄ < −threshold`; using the
/// signed quantity keeps slowly decaying but entangled states (σy) alive.
/// Only concurrence has finite-time zeros in this family; use [`half_life`]
/// for the other measures.
pub fn death_time(
    params: &StateParams,
    channel: &ChannelSpec,
    measure: Measure,
    threshold: f64,
) -> Result<DeathTimeResult> {
    if measure != Measure::Concurrence {
        return Err(Error::InvalidArgument(format!(
            "{measure} decays only asymptotically; use the half-life instead"
        )));
    }
    if !(threshold >= 0.0 && threshold.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "threshold must be non-negative, got {threshold}"
        )));
    }
    let dead = |t: f64| -> Result<bool> {
        let rho = analytic_evolve(params, channel, t)?;
        Ok(concurrence_margin(&rho)? < -threshold)
    };
    let mut result = bracket_and_bisect(channel.gamma, dead)?;
    result.closed_form_time = closed_form_death_time(params, channel);
    Ok(result)
}

/// Time at which `measure` first falls to half its initial value, from the
/// closed forms.
pub fn half_life(params: &StateParams, channel: &ChannelSpec, measure: Measure) -> Result<DeathTimeResult> {
    let axis = Some(channel.axis);
    let initial = measure_at(measure, params, axis, 1.0);
    if initial <= DEATH_THRESHOLD {
        return Ok(DeathTimeResult {
            time: None,
            bracket: (0.0, 0.0),
            iterations: 0,
            closed_form_time: None,
            diagnostic: Some(format!("{measure} vanishes initially")),
        });
    }
    let below = |t: f64| -> Result<bool> {
        let mu = decay_factor(channel, t)?;
        Ok(measure_at(measure, params, axis, mu) <= 0.5 * initial)
    };
    bracket_and_bisect(channel.gamma, below)
}

fn bracket_and_bisect(gamma: f64, dead: impl Fn(f64) -> Result<bool>) -> Result<DeathTimeResult> {
    let cap = BRACKET_CAP / gamma;
    let mut iterations = 0;
    if dead(0.0)? {
        return Ok(DeathTimeResult {
            time: Some(0.0),
            bracket: (0.0, 0.0),
            iterations,
            closed_form_time: None,
            diagnostic: None,
        });
    }

    let (mut lo, mut hi) = (0.0, 1.0 / gamma);
    loop {
        iterations += 1;
        if dead(hi)? {
            break;
        }
        if hi >= cap {
            return Ok(DeathTimeResult {
                time: None,
                bracket: (lo, hi),
                iterations,
                closed_form_time: None,
                diagnostic: Some(format!("no zero up to γt = {BRACKET_CAP}")),
            });
        }
        lo = hi;
        hi = (2.0 * hi).min(cap);
    }

    while hi - lo > TIME_RESOLUTION {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        if dead(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(DeathTimeResult {
        time: Some(hi),
        bracket: (lo, hi),
        iterations,
        closed_form_time: None,
        diagnostic: None,
    })
}
