//! Quantum correlations of a one-parameter family of two-qubit Bell-diagonal
//! states evolving under single-qubit Pauli-Lindblad noise.
//!
//! Every correlation measure is available twice: as a general numerical
//! oracle acting on an arbitrary two-qubit density matrix, and as a closed
//! form specialised to the state family. The [`dynamics`] module sweeps both
//! over `(θ, γt)` grids, locates entanglement sudden-death times and runs the
//! cross-check suite.
//!
//! ```
//! use qcorr::{channels, measures, states};
//!
//! let params = states::StateParams::new(std::f64::consts::FRAC_PI_4).unwrap();
//! let rho = states::initial_state(&params);
//! let c = measures::concurrence(&rho).unwrap();
//! assert!((c.value - 0.5).abs() < 1e-12);
//!
//! let channel = channels::ChannelSpec::new(channels::Axis::Z, 1.0).unwrap();
//! let evolved = channels::analytic_evolve(&params, &channel, 0.5f64.ln().abs()).unwrap();
//! assert!(measures::concurrence(&evolved).unwrap().value < 0.5);
//! ```

pub mod channels;
pub mod dynamics;
mod error;
pub mod linalg;
pub mod measures;
pub mod states;

pub use channels::{Axis, ChannelSpec, EvolutionPoint};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Subsystem, C64};
pub use measures::{Measure, MeasureResult, Method, OptimizerDiagnostics, OptimizerSettings};
pub use states::{BlochForm, DensityMatrix, StateParams};
