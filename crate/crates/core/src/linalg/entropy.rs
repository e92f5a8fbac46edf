use super::{hermitian_eigen, ComplexMatrix};
use crate::error::{Error, Result};

/// Eigenvalues with magnitude below this are treated as exact zeros.
pub const ZERO_CLAMP: f64 = 1e-12;
/// Eigenvalues below `-NEGATIVE_TOLERANCE` mark the input as unphysical.
const NEGATIVE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    /// log₂, results in bits.
    #[default]
    Bits,
    /// ln, results in nats.
    Nats,
}

impl LogBase {
    fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Bits => x.log2(),
            LogBase::Nats => x.ln(),
        }
    }
}

/// `-Σ λ log λ` over a probability spectrum with `0 log 0 = 0`.
pub fn entropy_of_spectrum(values: &[f64], base: LogBase) -> Result<f64> {
    let mut s = 0.0;
    for &v in values {
        if v < -NEGATIVE_TOLERANCE {
            return Err(Error::InvalidState(format!("negative eigenvalue {v:.3e}")));
        }
        if v > ZERO_CLAMP {
            s -= v * base.log(v);
        }
    }
    Ok(s.max(0.0))
}

/// Von Neumann entropy of a density matrix.
pub fn von_neumann_entropy(rho: &ComplexMatrix, base: LogBase) -> Result<f64> {
    let eig = hermitian_eigen(rho, 1e-10).map_err(|e| match e {
        Error::Precondition(msg) => Error::InvalidState(msg),
        other => other,
    })?;
    entropy_of_spectrum(&eig.values, base)
}

/// Shannon entropy of the distribution `(p, 1 - p)`, in bits.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !p.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&p) {
        return Err(Error::InvalidArgument(format!("probability {p} outside [0, 1]")));
    }
    let p = p.clamp(0.0, 1.0);
    let term = |q: f64| if q > 0.0 { -q * q.log2() } else { 0.0 };
    Ok(term(p) + term(1.0 - p))
}
