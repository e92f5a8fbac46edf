//! Single-qubit Pauli-Lindblad noise on a two-qubit state.
//!
//! With `H = 0` and one jump operator `L = 1⊗σ_k` (noise on qubit B) the
//! master equation reduces to `dρ/dt = γ (L ρ L† − ρ)` because `σ_k² = 1`.
//! Its exact solution is the Pauli-flip channel
//! `ρ(t) = p₊ ρ + p₋ L ρ L†` with `p± = (1 ± μ)/2` and `μ = e^{−2γt}`.
//!
//! Three independent routes are provided and cross-checked in the tests:
//! the closed-form X matrices for the initial family, the Kraus map for any
//! state, and a fixed-step RK4 integration of the generator.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{pauli, tensor, ComplexMatrix, Subsystem};
use crate::states::{DensityMatrix, StateParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn pauli(self) -> ComplexMatrix {
        match self {
            Axis::X => pauli::sigma_x(),
            Axis::Y => pauli::sigma_y(),
            Axis::Z => pauli::sigma_z(),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" | "sigma_x" | "sx" => Ok(Axis::X),
            "y" | "sigma_y" | "sy" => Ok(Axis::Y),
            "z" | "sigma_z" | "sz" => Ok(Axis::Z),
            other => Err(Error::InvalidArgument(format!("unknown channel axis '{other}'"))),
        }
    }
}

/// A Pauli channel `L = σ_axis` with coupling `γ` on one qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub axis: Axis,
    pub gamma: f64,
    /// Qubit the jump operator acts on. Defaults to B (`L = 1⊗σ`).
    pub qubit: Subsystem,
}

impl ChannelSpec {
    pub fn new(axis: Axis, gamma: f64) -> Result<Self> {
        Self::on_qubit(axis, gamma, Subsystem::B)
    }

    pub fn on_qubit(axis: Axis, gamma: f64, qubit: Subsystem) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "gamma must be finite and positive, got {gamma}"
            )));
        }
        Ok(Self { axis, gamma, qubit })
    }

    /// The jump operator lifted to the two-qubit space.
    pub fn jump_operator(&self) -> ComplexMatrix {
        let id = pauli::identity();
        let s = self.axis.pauli();
        match self.qubit {
            Subsystem::A => tensor(&s, &id),
            Subsystem::B => tensor(&id, &s),
        }
        .expect("2x2 factors")
    }
}

/// Decay scalars of the channel at time `t` for a given state family member.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionPoint {
    pub t: f64,
    /// `μ = e^{−2γt}`.
    pub mu: f64,
    /// `λ = μ (1 − 4η)`.
    pub lambda: f64,
}

impl EvolutionPoint {
    pub fn new(params: &StateParams, channel: &ChannelSpec, t: f64) -> Result<Self> {
        let mu = decay_factor(channel, t)?;
        Ok(Self {
            t,
            mu,
            lambda: mu * params.one_minus_four_eta(),
        })
    }
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "time must be finite and non-negative, got {t}"
        )));
    }
    Ok(())
}

/// `μ = exp(−2γt)`.
pub fn decay_factor(channel: &ChannelSpec, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok((-2.0 * channel.gamma * t).exp())
}

/// Right-hand side of the master equation, `γ (L ρ L† − ρ)`.
pub fn lindblad_rhs(rho: &ComplexMatrix, channel: &ChannelSpec) -> ComplexMatrix {
    let l = channel.jump_operator();
    let flipped = rho.conjugate_by(&l);
    (&flipped - rho).scale_real(channel.gamma)
}

fn flip_mixture(rho: &ComplexMatrix, channel: &ChannelSpec, mu: f64) -> ComplexMatrix {
    let p_plus = 0.5 * (1.0 + mu);
    let p_minus = 0.5 * (1.0 - mu);
    let flipped = rho.conjugate_by(&channel.jump_operator());
    &rho.scale_real(p_plus) + &flipped.scale_real(p_minus)
}

/// Kraus form of the channel: `K₀ = √p₊ 1`, `K₁ = √p₋ L`.
pub fn kraus_apply(rho: &DensityMatrix, channel: &ChannelSpec, t: f64) -> Result<DensityMatrix> {
    let mu = decay_factor(channel, t)?;
    Ok(DensityMatrix::new_unchecked(flip_mixture(rho.matrix(), channel, mu)))
}

/// Kraus map evaluated directly at a decay factor `μ ∈ [0, 1]`, which
/// includes the `t → ∞` limit `μ = 0`.
pub fn kraus_apply_mu(rho: &DensityMatrix, channel: &ChannelSpec, mu: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::InvalidArgument(format!(
            "decay factor must lie in [0, 1], got {mu}"
        )));
    }
    Ok(DensityMatrix::new_unchecked(flip_mixture(rho.matrix(), channel, mu)))
}

/// Closed-form evolved X matrix of `ρ(0; θ)` under the given channel.
///
/// With `a = 1 − 4η`, `λ = μ a`:
///
/// | axis | diagonal | `ρ₁₄` | `ρ₂₃` |
/// |------|----------|-------|-------|
/// | x | `((1−λ), (1+λ), (1+λ), (1−λ))/4` | `(1 + μ − 4ξ)/4` | `(1 − μ − 4ξ)/4` |
/// | y | `((1−λ), (1+λ), (1+λ), (1−λ))/4` | `(1 − λ)/4` | `−(1 + λ)/4` |
/// | z | `(η, ξ, ξ, η)` | `μη` | `−μξ` |
///
/// The matrices are real symmetric, so `ρ₄₁ = ρ₁₄` and `ρ₃₂ = ρ₂₃`. Every
/// member of the family is invariant under qubit exchange, so the result is
/// the same whichever qubit the noise acts on.
pub fn analytic_evolve(params: &StateParams, channel: &ChannelSpec, t: f64) -> Result<DensityMatrix> {
    let point = EvolutionPoint::new(params, channel, t)?;
    Ok(analytic_at_mu(params, channel.axis, point.mu))
}

/// [`analytic_evolve`] parametrised by `μ` instead of `(γ, t)`.
pub fn analytic_at_mu(params: &StateParams, axis: Axis, mu: f64) -> DensityMatrix {
    let (eta, xi) = (params.eta, params.xi);
    let lambda = mu * params.one_minus_four_eta();
    let (d_outer, d_inner, r14, r23) = match axis {
        Axis::X => (
            0.25 * (1.0 - lambda),
            0.25 * (1.0 + lambda),
            0.25 * (1.0 + mu - 4.0 * xi),
            0.25 * (1.0 - mu - 4.0 * xi),
        ),
        Axis::Y => (
            0.25 * (1.0 - lambda),
            0.25 * (1.0 + lambda),
            0.25 * (1.0 - lambda),
            -0.25 * (1.0 + lambda),
        ),
        Axis::Z => (eta, xi, mu * eta, -mu * xi),
    };
    DensityMatrix::new_unchecked(x_matrix([d_outer, d_inner, d_inner, d_outer], r14, r23))
}

/// Real symmetric X matrix from its diagonal and upper anti-diagonal.
pub fn x_matrix(diag: [f64; 4], r14: f64, r23: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::diag(&diag);
    m[(0, 3)] = r14.into();
    m[(3, 0)] = r14.into();
    m[(1, 2)] = r23.into();
    m[(2, 1)] = r23.into();
    m
}

/// Classical RK4 on [`lindblad_rhs`] with `steps` equal steps, followed by
/// a final Hermitian projection.
pub fn integrate_rk4(rho0: &DensityMatrix, channel: &ChannelSpec, t: f64, steps: usize) -> Result<DensityMatrix> {
    check_time(t)?;
    if steps < 1 {
        return Err(Error::InvalidArgument("RK4 needs at least one step".into()));
    }
    if t == 0.0 {
        return Ok(rho0.clone());
    }
    let h = t / steps as f64;
    let mut rho = rho0.matrix().clone();
    for _ in 0..steps {
        let k1 = lindblad_rhs(&rho, channel);
        let k2 = lindblad_rhs(&(&rho + &k1.scale_real(0.5 * h)), channel);
        let k3 = lindblad_rhs(&(&rho + &k2.scale_real(0.5 * h)), channel);
        let k4 = lindblad_rhs(&(&rho + &k3.scale_real(h)), channel);
        let incr = &(&k1 + &k2.scale_real(2.0)) + &(&k3.scale_real(2.0) + &k4);
        rho = &rho + &incr.scale_real(h / 6.0);
    }
    Ok(DensityMatrix::new_unchecked(rho.hermitize()))
}

/// Magnitude of the largest entry outside the diagonal and anti-diagonal.
pub fn x_structure_defect(m: &ComplexMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            if i != j && i + j != 3 {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}
