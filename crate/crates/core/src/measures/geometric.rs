use super::MeasureResult;
use crate::error::Result;
use crate::linalg::{hermitian_eigen, ComplexMatrix, Subsystem};
use crate::states::{bloch_decompose, DensityMatrix};

/// Hilbert-Schmidt geometric discord from Bloch data,
/// `DG = ¼ (‖y‖² + ‖T‖² − k)` with `k` the largest eigenvalue of
/// `y yᵀ + TᵀT`.
///
/// This is the form built on qubit B's Bloch vector. Use
/// [`geometric_discord_on`] to pick the other qubit.
pub fn geometric_discord(rho: &DensityMatrix) -> Result<MeasureResult> {
    geometric_discord_on(rho, Subsystem::B)
}

/// Geometric discord with the local vector and Gram matrix taken for `side`:
/// `(y, TᵀT)` for B, `(x, TTᵀ)` for A.
pub fn geometric_discord_on(rho: &DensityMatrix, side: Subsystem) -> Result<MeasureResult> {
    let b = bloch_decompose(rho);
    let b = match side {
        Subsystem::B => b,
        Subsystem::A => b.swapped(),
    };
    let y = b.y;
    let t = b.t;
    let mut gram = [[0.0f64; 3]; 3];
    for (i, row) in gram.iter_mut().enumerate() {
        for (j, g) in row.iter_mut().enumerate() {
            *g = y[i] * y[j] + (0..3).map(|k| t[k][i] * t[k][j]).sum::<f64>();
        }
    }
    let flat: Vec<f64> = gram.iter().flatten().copied().collect();
    let k = hermitian_eigen(&ComplexMatrix::from_real(3, &flat)?, 1e-12)?.values[0];
    let y_sqr: f64 = y.iter().map(|v| v * v).sum();
    let value = 0.25 * (y_sqr + b.correlation_norm_sqr() - k);
    Ok(MeasureResult::oracle(value))
}
