//! Simulation and linearization of time-varying discrete-time Volterra systems.
//!
//! A Volterra system is stored as a list of [`KernelTerm`]s, each a
//! time-invariant coefficient tensor scaled by a time-varying gain and
//! shifted in lag. Everything needed to evaluate such systems, cascade them
//! with FIR filters, and invert them with the Richardson equalizer lives in
//! this crate:
//!
//! - [`signal`], [`gain`], [`kernel`], [`system`], [`fir`], [`compose`]: the
//!   system model and its algebra.
//! - [`solver`]: the Richardson equalizer and its use as post- and
//!   pre-linearizer, plus the recursive `P`th-order inverse.
//! - [`convergence`]: the convergence functional ψ and related bounds.
//! - [`oracle`]: brute-force matrix formulation and bound checks used to
//!   validate the fast paths.
//! - [`harness`]: the nonlinear amplifier experiments, SNR, CSV/JSON output
//!   and the command line front end.
//!
//! ```
//! use voltlin::{FirFilter, Signal, VolterraSystem, KernelTerm, GainSequence};
//! use voltlin::solver::{post_linearize};
//!
//! // y = 2x + 0.1 x^3 (memoryless)
//! let system = VolterraSystem::new(vec![
//!     KernelTerm::separable(GainSequence::constant(2.0), 0, vec![vec![1.0.into()]]).unwrap(),
//!     KernelTerm::separable(GainSequence::constant(0.1), 0, vec![vec![1.0.into()]; 3]).unwrap(),
//! ]).unwrap();
//! let u = Signal::from_real(&[0.1, 0.5, -0.3]).unwrap();
//! let y = system.evaluate(&u).unwrap();
//! let q = FirFilter::pure_gain_inverse(2.0).unwrap();
//! let trace = post_linearize(&system, &q, &y, 8).unwrap();
//! let x = trace.last();
//! assert!((x.at(1).re - 1.0).abs() < 1e-6);
//! ```

pub mod compose;
pub mod convergence;
mod error;
pub mod fir;
pub mod gain;
pub mod harness;
pub mod kernel;
pub mod oracle;
pub mod schema;
pub mod signal;
pub mod solver;
pub mod system;

pub use error::{Error, Result};
pub use fir::FirFilter;
pub use gain::{GainModel, GainSequence};
pub use kernel::{Coefficients, DenseTensor, KernelTerm};
pub use num_complex::Complex64;
pub use signal::Signal;
pub use system::{LagSequence, VolterraSystem, DEFAULT_BUDGET};

/// Relative error `|a - b| / max(1, |b|)`.
pub fn relative_error(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}
