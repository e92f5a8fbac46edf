//! Closed forms for the state family `ρ(0; θ)` evolved under one Pauli
//! channel.
//!
//! Every evolved state is Bell-diagonal with correlation matrix
//! `T = −diag(c₁, c₂, c₃)` and maximally mixed marginals:
//!
//! | channel | `(c₁, c₂, c₃)` |
//! |---------|----------------|
//! | none | `(a, 1, a)` |
//! | x | `(a, μ, μa)` |
//! | y | `(μa, 1, μa)` |
//! | z | `(μa, μ, a)` |
//!
//! with `a = 1 − 4η` and `μ = e^{−2γt}`. All formulas below follow from
//! this table.

use super::MeasureResult;
use crate::channels::{decay_factor, Axis, ChannelSpec};
use crate::error::Result;
use crate::linalg::{binary_entropy, entropy_of_spectrum, LogBase};
use crate::states::StateParams;

/// Channel axis and decay factor, or `None` for the noiseless state.
fn resolve(channel: Option<&ChannelSpec>, t: f64) -> Result<Option<(Axis, f64)>> {
    channel.map(|ch| Ok((ch.axis, decay_factor(ch, t)?))).transpose()
}

/// Spectrum of the evolved state.
///
/// `ξ(1 ± μ), η(1 ± μ)` under x and z, `(1 ± λ)/2, 0, 0` under y.
pub fn family_spectrum(params: &StateParams, axis: Option<Axis>, mu: f64) -> [f64; 4] {
    let (eta, xi) = (params.eta, params.xi);
    let lambda = mu * params.one_minus_four_eta();
    match axis {
        None => [2.0 * xi, 2.0 * eta, 0.0, 0.0],
        Some(Axis::X | Axis::Z) => [xi * (1.0 + mu), xi * (1.0 - mu), eta * (1.0 + mu), eta * (1.0 - mu)],
        Some(Axis::Y) => [0.5 * (1.0 + lambda), 0.5 * (1.0 - lambda), 0.0, 0.0],
    }
}

/// `φ`, the largest correlation magnitude `max |cᵢ|`.
pub fn optimal_phi(params: &StateParams, axis: Option<Axis>, mu: f64) -> f64 {
    let a = params.one_minus_four_eta();
    match axis {
        None | Some(Axis::Y) => 1.0f64.max(mu * a),
        Some(Axis::X | Axis::Z) => a.max(mu).max(mu * a),
    }
}

fn joint_entropy(params: &StateParams, axis: Option<Axis>, mu: f64) -> f64 {
    entropy_of_spectrum(&family_spectrum(params, axis, mu), LogBase::Bits).expect("non-negative spectrum")
}

fn sc_at(params: &StateParams, axis: Option<Axis>, mu: f64) -> f64 {
    let phi = optimal_phi(params, axis, mu).min(1.0);
    binary_entropy(0.5 * (1.0 + phi)).expect("φ ∈ [0, 1]")
}

pub fn concurrence_at(params: &StateParams, axis: Option<Axis>, mu: f64) -> f64 {
    let (eta, xi) = (params.eta, params.xi);
    let lambda = mu * params.one_minus_four_eta();
    match axis {
        None => 2.0 * (xi.abs() - eta.abs()),
        Some(Axis::X) => (2.0 * (mu * xi - eta)).max(0.0),
        Some(Axis::Y) => 0.5 * ((lambda + 1.0).abs() - (lambda - 1.0).abs()),
        Some(Axis::Z) => (2.0 * ((mu * xi).abs() - eta)).max(0.0),
    }
}

pub fn geometric_discord_at(params: &StateParams, axis: Option<Axis>, mu: f64) -> f64 {
    let a2 = params.one_minus_four_eta().powi(2);
    match axis {
        None => 0.5 * a2,
        Some(Axis::X | Axis::Z) => {
            let m2 = mu * mu;
            0.25 * (a2 + m2 * (1.0 + a2)) - 0.25 * m2.max(a2).max(m2 * a2)
        }
        Some(Axis::Y) => 0.5 * mu * mu * a2,
    }
}

/// `1 − S(ρ) + SC`, the marginal entropy being one bit.
pub fn quantum_discord_at(params: &StateParams, axis: Option<Axis>, mu: f64) -> f64 {
    1.0 - joint_entropy(params, axis, mu) + sc_at(params, axis, mu)
}

/// `2 − S(ρ)`.
pub fn mutual_information_at(params: &StateParams, axis: Option<Axis>, mu: f64) -> f64 {
    2.0 - joint_entropy(params, axis, mu)
}

/// `1 − SC`.
pub fn classical_correlation_at(params: &StateParams, axis: Option<Axis>, mu: f64) -> f64 {
    1.0 - sc_at(params, axis, mu)
}

/// Closed-form value of `measure` at decay factor `mu`.
pub fn measure_at(measure: super::Measure, params: &StateParams, axis: Option<Axis>, mu: f64) -> f64 {
    use super::Measure::*;
    match measure {
        Concurrence => concurrence_at(params, axis, mu),
        GeometricDiscord => geometric_discord_at(params, axis, mu),
        QuantumDiscord => quantum_discord_at(params, axis, mu),
        MutualInformation => mutual_information_at(params, axis, mu),
        ClassicalCorrelation => classical_correlation_at(params, axis, mu),
    }
}

/// Closed-form concurrence; `channel = None` gives the noiseless value
/// `2(|ξ| − |η|)`.
pub fn concurrence_closed(params: &StateParams, channel: Option<&ChannelSpec>, t: f64) -> Result<MeasureResult> {
    let r = resolve(channel, t)?;
    Ok(MeasureResult::closed(concurrence_at(
        params,
        r.map(|r| r.0),
        r.map_or(1.0, |r| r.1),
    )))
}

pub fn geometric_discord_closed(params: &StateParams, channel: Option<&ChannelSpec>, t: f64) -> Result<MeasureResult> {
    let r = resolve(channel, t)?;
    Ok(MeasureResult::closed(geometric_discord_at(
        params,
        r.map(|r| r.0),
        r.map_or(1.0, |r| r.1),
    )))
}

/// Optimal conditional entropy `SC = h((1 + φ)/2)`.
pub fn conditional_entropy_closed(
    params: &StateParams,
    channel: Option<&ChannelSpec>,
    t: f64,
) -> Result<MeasureResult> {
    let r = resolve(channel, t)?;
    Ok(MeasureResult::closed(sc_at(
        params,
        r.map(|r| r.0),
        r.map_or(1.0, |r| r.1),
    )))
}

pub fn quantum_discord_closed(params: &StateParams, channel: Option<&ChannelSpec>, t: f64) -> Result<MeasureResult> {
    let r = resolve(channel, t)?;
    Ok(MeasureResult::closed(quantum_discord_at(
        params,
        r.map(|r| r.0),
        r.map_or(1.0, |r| r.1),
    )))
}

pub fn mutual_information_closed(params: &StateParams, channel: Option<&ChannelSpec>, t: f64) -> Result<MeasureResult> {
    let r = resolve(channel, t)?;
    Ok(MeasureResult::closed(mutual_information_at(
        params,
        r.map(|r| r.0),
        r.map_or(1.0, |r| r.1),
    )))
}

pub fn classical_correlation_closed(
    params: &StateParams,
    channel: Option<&ChannelSpec>,
    t: f64,
) -> Result<MeasureResult> {
    let r = resolve(channel, t)?;
    Ok(MeasureResult::closed(classical_correlation_at(
        params,
        r.map(|r| r.0),
        r.map_or(1.0, |r| r.1),
    )))
}
