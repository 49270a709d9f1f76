//! Quadratic-fluctuation spectra: spin waves over spiral states and
//! triplet excitations over the dimer state.

pub mod bogoliubov;
pub mod dimer;
pub mod energy;
pub mod spiral;

use std::f64::consts::PI;

use serde::Serialize;

pub use bogoliubov::{block_form, normal_modes, NormalModes};
pub use dimer::{
    dimer_quadratic_form, dimer_region_half_width, dimer_rpa_dispersion, dimer_rpa_energy_correction,
    dimer_rpa_energy_ratio, dimer_rpa_finite_correction, dimer_rpa_stability, elliptic_e, EnergyCorrection,
};
pub use energy::{rpa_energy_curves, rpa_methods, RpaCurvePoint, RpaEnergyMethod, RpaEstimate};
pub use spiral::{
    invariant_frequencies, local_excitation_energies, single_site_rpa_energy, spiral_modes,
    spiral_modes_numeric, spiral_rpa_blocks, spiral_rpa_spectrum, spiral_rpa_spectrum_at, RpaBlockMatrix,
    SpiralModes,
};

/// Branch energies on a momentum list. Spiral spectra carry two branches,
/// dimer spectra one branch with `degeneracy == 3`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RpaSpectrum {
    pub momenta: Vec<f64>,
    pub branches: Vec<Vec<f64>>,
    pub zero_mode: Vec<bool>,
    pub unstable: Vec<bool>,
    pub stable: bool,
    pub degeneracy: usize,
}

/// `2 pi n / n_k` for `n = 0..n_k`.
pub fn momentum_grid(n_k: usize) -> Vec<f64> {
    (0..n_k).map(|n| 2.0 * PI * n as f64 / n_k as f64).collect()
}
