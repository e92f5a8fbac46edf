//! Reference expressions in their printed algebraic form, kept for the
//! verification report.
//!
//! Some of these are known to be wrong (the σx concurrence and the σy
//! evolved matrix); they are evaluated so that their deviation from the
//! corrected forms can be measured, never used for results.

use crate::channels::Axis;
use crate::linalg::{binary_entropy, ComplexMatrix, C64};
use crate::states::StateParams;

use super::closed::optimal_phi;

/// `x ln x` with the `0 ln 0 = 0` convention.
fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// Noiseless discord `−1 + 8(ξ ln 8ξ + η ln 8η) / ln 16`.
pub fn noiseless_discord(params: &StateParams) -> f64 {
    let (eta, xi) = (params.eta, params.xi);
    let term = |w: f64| if w > 0.0 { w * (8.0 * w).ln() } else { 0.0 };
    -1.0 + 8.0 * (term(xi) + term(eta)) / 16f64.ln()
}

/// σx concurrence as printed: `max(0, ½[μ + λ + 4(8ξ² − 3ξ + 1)])`.
///
/// Evaluates to 4 for the singlet at `t = 0`, which is impossible.
pub fn sigma_x_concurrence(params: &StateParams, mu: f64) -> f64 {
    let xi = params.xi;
    let lambda = mu * params.one_minus_four_eta();
    (0.5 * (mu + lambda + 4.0 * (8.0 * xi * xi - 3.0 * xi + 1.0))).max(0.0)
}

/// Sudden-death time under σx, `(1/γ) ln √(ξ/η)`.
pub fn sigma_x_death_time(params: &StateParams, gamma: f64) -> f64 {
    (params.xi / params.eta).sqrt().ln() / gamma
}

/// Sudden-death time under σz, `(1/4γ) ln (1 − 2 csc²θ)²`.
pub fn sigma_z_death_time(theta: f64, gamma: f64) -> f64 {
    let csc2 = 1.0 / theta.sin().powi(2);
    (1.0 - 2.0 * csc2).powi(2).ln() / (4.0 * gamma)
}

/// The σy evolved matrix as printed. Its `(3,2)` entry reads `−(1 − λ)` and
/// its `(3,3)` entry `1 − λ`, which breaks Hermiticity and the unit trace.
pub fn sigma_y_matrix(params: &StateParams, mu: f64) -> ComplexMatrix {
    let l = mu * params.one_minus_four_eta();
    #[rustfmt::skip]
    let raw = [
        1.0 - l, 0.0, 0.0, 1.0 - l,
        0.0, 1.0 + l, -(1.0 + l), 0.0,
        0.0, -(1.0 - l), 1.0 - l, 0.0,
        1.0 - l, 0.0, 0.0, 1.0 - l,
    ];
    ComplexMatrix::new(4, raw.iter().map(|&v| C64::new(0.25 * v, 0.0)).collect()).expect("16 entries")
}

/// Optimal conditional entropy `h((1 + φ)/2)` with
/// `φ = max[1 − 4η, μ, μ(1 − 4η)]`.
pub fn sigma_xz_conditional_entropy(params: &StateParams, mu: f64) -> f64 {
    binary_entropy(0.5 * (1.0 + optimal_phi(params, Some(Axis::X), mu))).expect("φ ∈ [0, 1]")
}

/// Total correlation `2 + Σ εᵢ log₂ εᵢ` over the σx/σz spectrum
/// `ξ(1 ± μ), η(1 ± μ)`.
pub fn sigma_xz_mutual_information(params: &StateParams, mu: f64) -> f64 {
    let (eta, xi) = (params.eta, params.xi);
    let eps = [xi * (1.0 - mu), xi * (1.0 + mu), eta * (1.0 - mu), eta * (1.0 + mu)];
    2.0 + eps.iter().map(|&e| xlnx(e)).sum::<f64>() / std::f64::consts::LN_2
}

/// σx/σz discord in the `ν = √μ cosh γt`, `ϑ = √μ sinh γt` form:
/// `−1 + Σ_{w∈{ν,ϑ}} (w / ln 16)(ln[(8w)⁴ ξ³ η] + (8ξ − 3) ln(ξ/η)) + SC`.
///
/// Requires `η > 0`.
pub fn sigma_xz_discord(params: &StateParams, gamma: f64, t: f64) -> f64 {
    let (eta, xi) = (params.eta, params.xi);
    let mu = (-2.0 * gamma * t).exp();
    let root_mu = mu.sqrt();
    let nu = root_mu * (gamma * t).cosh();
    let vartheta = root_mu * (gamma * t).sinh();
    let ln16 = 16f64.ln();
    let tail = (8.0 * xi - 3.0) * (xi / eta).ln();
    let term = |w: f64| {
        if w > 0.0 {
            w / ln16 * ((8.0 * w).powi(4) * xi.powi(3) * eta).ln() + w / ln16 * tail
        } else {
            0.0
        }
    };
    -1.0 + term(nu) + term(vartheta) + sigma_xz_conditional_entropy(params, mu)
}

/// σy mutual information
/// `(2/ln 16)[λ ln((1+λ)/(1−λ)) + ln 4(1+λ)(1−λ)]`.
pub fn sigma_y_mutual_information(lambda: f64) -> f64 {
    let ln16 = 16f64.ln();
    2.0 / ln16 * (lambda * ((1.0 + lambda) / (1.0 - lambda)).ln() + (4.0 * (1.0 + lambda) * (1.0 - lambda)).ln())
}

/// σy discord `(2/ln 16)[λ ln((1+λ)/(1−λ)) + ln (1+λ)(1−λ)]`.
pub fn sigma_y_discord(lambda: f64) -> f64 {
    let ln16 = 16f64.ln();
    2.0 / ln16 * (lambda * ((1.0 + lambda) / (1.0 - lambda)).ln() + ((1.0 + lambda) * (1.0 - lambda)).ln())
}
