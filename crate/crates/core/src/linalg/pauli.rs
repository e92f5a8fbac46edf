//! Pauli matrices in the computational basis.

use num_complex::Complex64 as C64;

use super::ComplexMatrix;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

pub fn identity() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::new(2, vec![ZERO, ONE, ONE, ZERO]).expect("2x2")
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::new(2, vec![ZERO, -I, I, ZERO]).expect("2x2")
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::new(2, vec![ONE, ZERO, ZERO, -ONE]).expect("2x2")
}

/// `[σx, σy, σz]`.
pub fn sigmas() -> [ComplexMatrix; 3] {
    [sigma_x(), sigma_y(), sigma_z()]
}

/// Fixed constants `{1, σx, σy, σz}`.
#[derive(Debug, Clone)]
pub struct PauliBasis {
    pub identity: ComplexMatrix,
    pub sigma_x: ComplexMatrix,
    pub sigma_y: ComplexMatrix,
    pub sigma_z: ComplexMatrix,
}

impl Default for PauliBasis {
    fn default() -> Self {
        Self {
            identity: identity(),
            sigma_x: sigma_x(),
            sigma_y: sigma_y(),
            sigma_z: sigma_z(),
        }
    }
}

impl PauliBasis {
    pub fn sigma(&self, k: usize) -> &ComplexMatrix {
        match k {
            0 => &self.sigma_x,
            1 => &self.sigma_y,
            2 => &self.sigma_z,
            _ => panic!("Pauli index {k} out of range"),
        }
    }
}

/// `n̂·σ` for a real 3-vector.
pub fn dot_sigma(n: [f64; 3]) -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        vec![
            C64::new(n[2], 0.0),
            C64::new(n[0], -n[1]),
            C64::new(n[0], n[1]),
            C64::new(-n[2], 0.0),
        ],
    )
    .expect("2x2")
}
