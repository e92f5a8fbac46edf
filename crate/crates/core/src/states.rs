//! The initial state family `ρ(0; θ)`, density-matrix validation and the
//! Bloch (Fano) decomposition of two-qubit states.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, partial_trace, pauli, tensor, ComplexMatrix, Subsystem, C64};

/// Tolerance for trace and Hermiticity checks on density matrices.
pub const STATE_TOLERANCE: f64 = 1e-12;
/// Smallest eigenvalue accepted for a density matrix.
pub const MIN_EIGENVALUE: f64 = -1e-10;

/// The single knob `θ` of the state family and the weights derived from it.
///
/// `η = sin²θ / 4` is the weight on each of the `|00⟩, |11⟩` populations and
/// `ξ = (3 + cos 2θ) / 8 = 1/2 − η` the weight on `|01⟩, |10⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateParams {
    pub theta: f64,
    pub eta: f64,
    pub xi: f64,
}

impl StateParams {
    /// Angles outside `[0, π)` are folded back; every quantity depends on
    /// `θ` only through `sin²θ`.
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidArgument(format!("theta must be finite, got {theta}")));
        }
        let reduced = theta.rem_euclid(PI);
        let s = theta.sin();
        Ok(Self {
            theta: reduced,
            eta: 0.25 * s * s,
            xi: (3.0 + (2.0 * theta).cos()) / 8.0,
        })
    }

    /// `1 − 4η = cos²θ`, the magnitude of the `t₁₁` and `t₃₃` correlations.
    pub fn one_minus_four_eta(&self) -> f64 {
        1.0 - 4.0 * self.eta
    }
}

/// A validated two-qubit density matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Checks trace, Hermiticity and positivity.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        validate(&m)?;
        Ok(Self(m))
    }

    /// Wraps `m` without validation; the caller vouches for the invariants.
    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn reduced(&self, keep: Subsystem) -> ComplexMatrix {
        partial_trace(&self.0, keep).expect("density matrices are 4x4")
    }

    pub fn maximally_mixed() -> Self {
        Self(ComplexMatrix::identity(4).scale_real(0.25))
    }

    /// `|ψ⁻⟩⟨ψ⁻|` with `|ψ⁻⟩ = (|01⟩ − |10⟩)/√2`.
    pub fn singlet() -> Self {
        Self(ComplexMatrix::projector(&bell::psi_minus()))
    }

    /// Computational basis projector `|ab⟩⟨ab|`.
    pub fn basis(a: usize, b: usize) -> Result<Self> {
        if a > 1 || b > 1 {
            return Err(Error::InvalidArgument("basis labels must be 0 or 1".into()));
        }
        let mut m = ComplexMatrix::zeros(4);
        m[(2 * a + b, 2 * a + b)] = C64::new(1.0, 0.0);
        Ok(Self(m))
    }

    /// Worst violation of the density-matrix invariants, for reporting.
    pub fn validity(&self) -> StateValidity {
        StateValidity::of(&self.0)
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// Measured deviations from trace one, Hermiticity and positivity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateValidity {
    pub trace_error: f64,
    pub hermiticity_defect: f64,
    pub min_eigenvalue: f64,
}

impl StateValidity {
    pub fn of(m: &ComplexMatrix) -> Self {
        let trace = m.trace();
        let min_eigenvalue = hermitian_eigen(&m.hermitize(), f64::INFINITY)
            .map(|e| *e.values.last().expect("non-empty spectrum"))
            .unwrap_or(f64::NAN);
        Self {
            trace_error: (trace - C64::new(1.0, 0.0)).norm(),
            hermiticity_defect: m.hermiticity_defect(),
            min_eigenvalue,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.trace_error <= STATE_TOLERANCE
            && self.hermiticity_defect <= STATE_TOLERANCE
            && self.min_eigenvalue >= MIN_EIGENVALUE
    }
}

fn validate(m: &ComplexMatrix) -> Result<()> {
    if m.dim() != 4 {
        return Err(Error::InvalidState(format!(
            "expected a 4x4 matrix, got {}x{}",
            m.dim(),
            m.dim()
        )));
    }
    if m.entries().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidState("non-finite entry".into()));
    }
    let v = StateValidity::of(m);
    if v.trace_error > STATE_TOLERANCE {
        return Err(Error::InvalidState(format!(
            "trace deviates from 1 by {:.3e}",
            v.trace_error
        )));
    }
    if v.hermiticity_defect > STATE_TOLERANCE {
        return Err(Error::InvalidState(format!(
            "not Hermitian (defect {:.3e})",
            v.hermiticity_defect
        )));
    }
    if v.min_eigenvalue < MIN_EIGENVALUE {
        return Err(Error::InvalidState(format!(
            "negative eigenvalue {:.3e}",
            v.min_eigenvalue
        )));
    }
    Ok(())
}

/// Bell vectors in the `|00⟩, |01⟩, |10⟩, |11⟩` basis.
pub mod bell {
    use super::*;

    fn v(a: [f64; 4]) -> Vec<C64> {
        a.iter().map(|&x| C64::new(x * FRAC_1_SQRT_2, 0.0)).collect()
    }

    pub fn phi_plus() -> Vec<C64> {
        v([1.0, 0.0, 0.0, 1.0])
    }

    pub fn phi_minus() -> Vec<C64> {
        v([1.0, 0.0, 0.0, -1.0])
    }

    pub fn psi_plus() -> Vec<C64> {
        v([0.0, 1.0, 1.0, 0.0])
    }

    pub fn psi_minus() -> Vec<C64> {
        v([0.0, 1.0, -1.0, 0.0])
    }
}

/// `ρ(0; θ) = 2ξ |ψ⁻⟩⟨ψ⁻| + 2η |φ⁺⟩⟨φ⁺|`.
///
/// In the computational basis this is the X matrix with diagonal
/// `(η, ξ, ξ, η)`, outer anti-diagonal `η` and inner anti-diagonal `−ξ`.
pub fn initial_state(params: &StateParams) -> DensityMatrix {
    let singlet = ComplexMatrix::projector(&bell::psi_minus()).scale_real(2.0 * params.xi);
    let phi = ComplexMatrix::projector(&bell::phi_plus()).scale_real(2.0 * params.eta);
    DensityMatrix::new_unchecked(&singlet + &phi)
}

/// Local Bloch vectors and correlation matrix of a two-qubit operator:
/// `ρ = ¼ (1⊗1 + Σ xᵢ σᵢ⊗1 + Σ yⱼ 1⊗σⱼ + Σ tᵢⱼ σᵢ⊗σⱼ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochForm {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl BlochForm {
    pub fn zero() -> Self {
        Self {
            x: [0.0; 3],
            y: [0.0; 3],
            t: [[0.0; 3]; 3],
        }
    }

    /// Decompose an arbitrary 4x4 operator; fails if any coefficient has an
    /// imaginary part above `1e-12` (i.e. the input is not Hermitian).
    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self> {
        if m.dim() != 4 {
            return Err(Error::InvalidState("Bloch decomposition needs a 4x4 matrix".into()));
        }
        let id = pauli::identity();
        let sig = pauli::sigmas();
        let coeff = |op: ComplexMatrix| -> Result<f64> {
            let z = m.trace_product(&op);
            if z.im.abs() > STATE_TOLERANCE {
                return Err(Error::InvalidState(format!(
                    "complex Bloch coefficient (imag {:.3e})",
                    z.im
                )));
            }
            Ok(z.re)
        };
        let mut out = Self::zero();
        for i in 0..3 {
            out.x[i] = coeff(tensor(&sig[i], &id)?)?;
            out.y[i] = coeff(tensor(&id, &sig[i])?)?;
            for j in 0..3 {
                out.t[i][j] = coeff(tensor(&sig[i], &sig[j])?)?;
            }
        }
        Ok(out)
    }

    /// Hilbert-Schmidt norm squared `Σ tᵢⱼ²`.
    pub fn correlation_norm_sqr(&self) -> f64 {
        self.t.iter().flatten().map(|v| v * v).sum()
    }

    /// The Bloch form with the roles of the two qubits exchanged.
    pub fn swapped(&self) -> Self {
        let mut t = [[0.0; 3]; 3];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.t[j][i];
            }
        }
        Self {
            x: self.y,
            y: self.x,
            t,
        }
    }
}

pub fn bloch_decompose(rho: &DensityMatrix) -> BlochForm {
    BlochForm::from_matrix(rho.matrix()).expect("validated density matrix has a real Bloch form")
}

/// Linear reconstruction from Bloch data. Positivity is not checked.
pub fn bloch_compose(b: &BlochForm) -> ComplexMatrix {
    let id = pauli::identity();
    let sig = pauli::sigmas();
    let mut m = ComplexMatrix::identity(4);
    for i in 0..3 {
        m = &m + &tensor(&sig[i], &id).expect("2x2").scale_real(b.x[i]);
        m = &m + &tensor(&id, &sig[i]).expect("2x2").scale_real(b.y[i]);
        for j in 0..3 {
            m = &m + &tensor(&sig[i], &sig[j]).expect("2x2").scale_real(b.t[i][j]);
        }
    }
    m.scale_real(0.25)
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl From<DensityMatrix> for MatrixJson {
    fn from(rho: DensityMatrix) -> Self {
        let m = rho.into_matrix();
        Self {
            dim: m.dim(),
            re: m.entries().iter().map(|z| z.re).collect(),
            im: m.entries().iter().map(|z| z.im).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for DensityMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.re.len() != j.im.len() {
            return Err(Error::InvalidArgument("re and im arrays differ in length".into()));
        }
        let entries = j.re.iter().zip(&j.im).map(|(&r, &i)| C64::new(r, i)).collect();
        DensityMatrix::new(ComplexMatrix::new(j.dim, entries)?)
    }
}
