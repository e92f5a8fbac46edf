//! Dense complex kernel for qubit and two-qubit operators.

mod eigen;
mod entropy;
mod matrix;
pub mod pauli;

pub use eigen::{hermitian_eigen, EigenDecomposition, JACOBI_MAX_SWEEPS, JACOBI_THRESHOLD};
pub use entropy::{binary_entropy, entropy_of_spectrum, von_neumann_entropy, LogBase, ZERO_CLAMP};
pub use matrix::{partial_trace, swap_qubits, tensor, ComplexMatrix, Subsystem};
pub use num_complex::Complex64 as C64;
pub use pauli::PauliBasis;
