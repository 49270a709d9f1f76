//! Frustrated spin-S zig-zag ladder: exact diagonalization, mean-field
//! solvers, RPA spectra, perturbative gaps and fidelity diagnostics.

pub mod error;
pub mod exact;
pub mod meanfield;
pub mod model;
pub mod perturb;
pub mod registry;
pub mod rpa;
pub mod spin;

pub use error::{Error, Result};
pub use spin::SpinValue;
