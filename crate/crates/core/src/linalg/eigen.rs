use num_complex::Complex64 as C64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm (relative to the matrix norm) at which the
/// cyclic Jacobi iteration stops.
pub const JACOBI_THRESHOLD: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Spectrum of a Hermitian matrix, eigenvalues sorted descending.
///
/// Column `k` of `vectors` is the eigenvector for `values[k]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
    pub sweeps: usize,
}

impl EigenDecomposition {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        let n = self.vectors.dim();
        (0..n).map(|i| self.vectors[(i, k)]).collect()
    }

    /// `(eigenvalue, eigenvector)` pairs in descending eigenvalue order.
    pub fn pairs(&self) -> impl Iterator<Item = (f64, Vec<C64>)> + '_ {
        self.values.iter().enumerate().map(|(k, &v)| (v, self.vector(k)))
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.vectors.dim();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.vectors[(i, k)] * self.values[k] * self.vectors[(j, k)].conj())
                .sum()
        })
    }

    /// Apply `f` to the spectrum: `V f(Λ) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let mapped = EigenDecomposition {
            values: self.values.iter().map(|&v| f(v)).collect(),
            vectors: self.vectors.clone(),
            sweeps: self.sweeps,
        };
        mapped.reconstruct()
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Cyclic complex Jacobi eigensolver for a Hermitian matrix.
///
/// Fails with [`Error::Precondition`] if `m` deviates from Hermitian by more
/// than `tol` in any component. The input is symmetrised before iterating.
pub fn hermitian_eigen(m: &ComplexMatrix, tol: f64) -> Result<EigenDecomposition> {
    let defect = m.hermiticity_defect();
    if defect > tol {
        return Err(Error::Precondition(format!(
            "matrix is not Hermitian (defect {defect:.3e} > {tol:.3e})"
        )));
    }
    let n = m.dim();
    let mut a = m.hermitize();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    while off_diagonal_norm(&a) > JACOBI_THRESHOLD * scale {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::Numerical(format!(
                "Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, k| v[(i, order[k])]);
    Ok(EigenDecomposition {
        values,
        vectors,
        sweeps,
    })
}

/// Annihilate `a[p][q]` with the unitary `U = diag(1, e^{-iφ}) · R(θ)` acting
/// on the `(p, q)` plane, then update `a ← U† a U` and `v ← v U`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let abs = apq.norm();
    if abs == 0.0 {
        return;
    }
    let phase = apq / abs; // e^{iφ}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let tau = (aqq - app) / (2.0 * abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let phase_conj = phase.conj();

    let n = a.dim();
    // columns: a ← a U
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * phase_conj * s;
        a[(k, q)] = akp * s + akq * phase_conj * c;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * phase_conj * s;
        v[(k, q)] = vkp * s + vkq * phase_conj * c;
    }
    // rows: a ← U† a
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}
