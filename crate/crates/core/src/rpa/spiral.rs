//! Spin-wave fluctuations around coplanar product states.
//!
//! Each momentum `k = 2 pi n / N` couples the two sublattices of a rung
//! through a `4 x 4` Hermitian matrix `[[L + D+, D-], [D-, L + D+]]`.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use serde::Serialize;

use super::bogoliubov::normal_modes;
use super::RpaSpectrum;
use crate::meanfield::classical::{spiral_energy, spiral_gradient, SpiralAngles, STATIONARY_TOL};
use crate::model::ladder::UniformCouplings;
use crate::spin::SpinValue;

pub const ZERO_MODE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RpaBlockMatrix {
    pub k: f64,
    #[serde(skip)]
    pub delta_plus: Matrix2<Complex64>,
    #[serde(skip)]
    pub delta_minus: Matrix2<Complex64>,
    /// Local excitation energies of the sublattices `2r` and `2r+1`.
    pub lambda: [f64; 2],
    /// Whether the angles were a stationary point of the classical energy.
    pub stationary: bool,
}

impl RpaBlockMatrix {
    pub fn assemble(&self) -> DMatrix<Complex64> {
        let mut h = DMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                let l = if i == j { self.lambda[i] } else { 0.0 };
                let a = self.delta_plus[(i, j)] + Complex64::new(l, 0.0);
                h[(i, j)] = a;
                h[(i + 2, j + 2)] = a;
                h[(i, j + 2)] = self.delta_minus[(i, j)];
                h[(i + 2, j)] = self.delta_minus[(i, j)];
            }
        }
        h
    }
}

/// Local field energies `S |J cos f + J' cos(t - f) + 2 J2^(x) cos t|` per
/// sublattice; site `2r` sits on the `J2'` leg, site `2r+1` on the `J2` leg.
pub fn local_excitation_energies(a: &SpiralAngles, c: &UniformCouplings, spin: SpinValue) -> [f64; 2] {
    let common = c.j * a.phi.cos() + c.jp * (a.theta - a.phi).cos();
    let s = spin.s();
    [
        s * (common + 2.0 * c.j2p * a.theta.cos()).abs(),
        s * (common + 2.0 * c.j2 * a.theta.cos()).abs(),
    ]
}

pub fn spiral_rpa_blocks(k: f64, a: &SpiralAngles, c: &UniformCouplings, spin: SpinValue) -> RpaBlockMatrix {
    let s = spin.s();
    let cos2 = |x: f64| (0.5 * x).cos().powi(2);
    let sin2 = |x: f64| (0.5 * x).sin().powi(2);
    let (t, f) = (a.theta, a.phi);
    let e_minus = Complex64::from_polar(1.0, -k);
    let build = |sq: &dyn Fn(f64) -> f64, sign: f64| {
        let d0 = 2.0 * c.j2p * k.cos() * sq(t);
        let d1 = 2.0 * c.j2 * k.cos() * sq(t);
        let off = Complex64::new(c.j * sq(f), 0.0) + e_minus * (c.jp * sq(t - f));
        Matrix2::new(
            Complex64::new(d0, 0.0),
            off,
            off.conj(),
            Complex64::new(d1, 0.0),
        ) * Complex64::new(sign * s, 0.0)
    };
    let g = spiral_gradient(a, c);
    RpaBlockMatrix {
        k,
        delta_plus: build(&cos2, 1.0),
        delta_minus: build(&sin2, -1.0),
        lambda: local_excitation_energies(a, c, spin),
        stationary: g[0].hypot(g[1]) < STATIONARY_TOL * (1.0 + c.j + c.jp + c.j2 + c.j2p),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpiralModes {
    pub omega_minus: f64,
    pub omega_plus: f64,
    pub zero_mode: bool,
    pub unstable: bool,
}

/// `w^2 = [tr((MH)^2) +- sqrt(tr((MH)^2)^2 - 16 det H)] / 4`.
pub fn invariant_frequencies(h: &DMatrix<Complex64>) -> (Complex64, Complex64) {
    let mut mh = h.clone();
    for i in 2..4 {
        for j in 0..4 {
            mh[(i, j)] = -mh[(i, j)];
        }
    }
    let tr2 = (&mh * &mh).trace();
    let det = h.determinant();
    let root = (tr2 * tr2 - det * 16.0).sqrt();
    let plus = ((tr2 + root) / 4.0).sqrt();
    let minus = ((tr2 - root) / 4.0).sqrt();
    (minus, plus)
}

pub fn spiral_modes(block: &RpaBlockMatrix) -> SpiralModes {
    let h = block.assemble();
    let (minus, plus) = invariant_frequencies(&h);
    let scale = block.lambda[0].max(block.lambda[1]).max(1e-300);
    let det = h.determinant();
    // judged on w^2 so that roundoff at zero modes does not read as instability
    let (m2, p2) = (minus * minus, plus * plus);
    let tol = 1e-10 * scale * scale;
    let mut unstable = m2.im.abs() > tol || p2.im.abs() > tol || m2.re < -tol;
    if unstable {
        // nearly degenerate branches leave a roundoff-sized discriminant
        unstable = normal_modes(&h).max_imaginary > 1e-8 * scale;
    }
    SpiralModes {
        omega_minus: m2.re.max(0.0).sqrt(),
        omega_plus: p2.re.max(0.0).sqrt(),
        zero_mode: det.norm() < ZERO_MODE_TOL * scale.powi(4),
        unstable,
    }
}

/// Numeric Bogoliubov frequencies of one block, for cross-checking
/// [`invariant_frequencies`].
pub fn spiral_modes_numeric(block: &RpaBlockMatrix) -> [f64; 2] {
    let m = normal_modes(&block.assemble());
    [m.frequencies[0], m.frequencies[1]]
}

pub fn spiral_rpa_spectrum_at(
    momenta: &[f64],
    a: &SpiralAngles,
    c: &UniformCouplings,
    spin: SpinValue,
) -> RpaSpectrum {
    let modes: Vec<SpiralModes> = momenta
        .iter()
        .map(|&k| spiral_modes(&spiral_rpa_blocks(k, a, c, spin)))
        .collect();
    let unstable: Vec<bool> = modes.iter().map(|m| m.unstable).collect();
    RpaSpectrum {
        momenta: momenta.to_vec(),
        branches: vec![
            modes.iter().map(|m| m.omega_minus).collect(),
            modes.iter().map(|m| m.omega_plus).collect(),
        ],
        zero_mode: modes.iter().map(|m| m.zero_mode).collect(),
        stable: !unstable.iter().any(|&u| u),
        unstable,
        degeneracy: 1,
    }
}

/// Both branches on `k = 2 pi n / n_k`, `n = 0..n_k`.
pub fn spiral_rpa_spectrum(a: &SpiralAngles, c: &UniformCouplings, spin: SpinValue, n_k: usize) -> RpaSpectrum {
    spiral_rpa_spectrum_at(&super::momentum_grid(n_k), a, c, spin)
}

/// `E_sep - N lambda + (1/2) sum_k (w- + w+)` on an `n_rungs` lattice;
/// `None` when any momentum is unstable.
pub fn single_site_rpa_energy(
    a: &SpiralAngles,
    c: &UniformCouplings,
    spin: SpinValue,
    n_rungs: usize,
) -> Option<f64> {
    let spectrum = spiral_rpa_spectrum(a, c, spin, n_rungs);
    if !spectrum.stable {
        return None;
    }
    let lambda = local_excitation_energies(a, c, spin);
    let zero_point: f64 = spectrum.branches.iter().flatten().sum::<f64>() * 0.5;
    Some(spiral_energy(a, c, spin, n_rungs) - 0.5 * n_rungs as f64 * (lambda[0] + lambda[1]) + zero_point)
}
