//! Triplet excitations over the dimer product state.

use nalgebra::DMatrix;
use serde::Serialize;

use super::bogoliubov::{block_form, normal_modes};
use super::{momentum_grid, RpaSpectrum};
use crate::error::{Error, Result};
use crate::spin::SpinValue;

/// `w_k / J = sqrt(1 - gamma cos k)` on `k = 2 pi n / N`. Momenta with a
/// negative radicand are flagged unstable and report `w = 0`.
pub fn dimer_rpa_dispersion(gamma: f64, n_rungs: usize) -> RpaSpectrum {
    let momenta = momentum_grid(n_rungs);
    let sq: Vec<f64> = momenta.iter().map(|k| 1.0 - gamma * k.cos()).collect();
    let unstable: Vec<bool> = sq.iter().map(|&x| x < -1e-12).collect();
    RpaSpectrum {
        branches: vec![sq.iter().map(|&x| x.max(0.0).sqrt()).collect()],
        zero_mode: sq.iter().map(|&x| x.abs() < 1e-12).collect(),
        stable: !unstable.iter().any(|&u| u),
        unstable,
        momenta,
        degeneracy: 3,
    }
}

/// Real-space quadratic form of one triplet channel in units of `J`:
/// `A = 1 + (gamma/4)(P + P^T)`, `B = (gamma/4)(P + P^T)` with `P` the
/// periodic shift.
pub fn dimer_quadratic_form(gamma: f64, n_rungs: usize) -> (DMatrix<f64>, DMatrix<f64>) {
    let mut hop = DMatrix::zeros(n_rungs, n_rungs);
    for r in 0..n_rungs {
        let next = (r + 1) % n_rungs;
        hop[(r, next)] += 0.25 * gamma;
        hop[(next, r)] += 0.25 * gamma;
    }
    (DMatrix::identity(n_rungs, n_rungs) + &hop, hop)
}

/// Frequencies of [`dimer_quadratic_form`] from a numeric Bogoliubov
/// diagonalization, sorted ascending.
pub fn dimer_numeric_frequencies(gamma: f64, n_rungs: usize) -> Vec<f64> {
    let (a, b) = dimer_quadratic_form(gamma, n_rungs);
    normal_modes(&block_form(&a, &b)).frequencies
}

pub fn dimer_rpa_stability(gamma: f64) -> bool {
    gamma.abs() < 1.0
}

/// Half-width in `2 J2 - J'` of the window `|gamma| < 1`.
pub fn dimer_region_half_width(spin: SpinValue, j: f64) -> f64 {
    j / spin.casimir_ratio()
}

/// `E(m) = int_0^{pi/2} sqrt(1 - m sin^2 u) du`; `None` for `m > 1`.
pub fn elliptic_e(m: f64) -> Option<f64> {
    if !(m <= 1.0) {
        return None;
    }
    let f = |u: f64| (1.0 - m * u.sin().powi(2)).max(0.0).sqrt();
    Some(adaptive_simpson(&f, 0.0, std::f64::consts::FRAC_PI_2, 1e-14, 50))
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let diff = left + right - whole;
        if depth == 0 || diff.abs() <= 15.0 * tol {
            return left + right + diff / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    recurse(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, depth)
}

/// `Delta E / E_dimer` for spin 1/2, from the elliptic closed form and from
/// a periodic trapezoid sum over the zone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyCorrection {
    pub closed_form: Option<f64>,
    pub quadrature: f64,
}

pub const BZ_NODES: usize = 20_000;

pub fn dimer_rpa_energy_correction(gamma: f64) -> Result<EnergyCorrection> {
    if !dimer_rpa_stability(gamma) {
        return Err(Error::Unstable(gamma));
    }
    if gamma == 0.0 {
        return Ok(EnergyCorrection {
            closed_form: Some(0.0),
            quadrature: 0.0,
        });
    }
    let mean: f64 = momentum_grid(BZ_NODES)
        .iter()
        .map(|k| (1.0 - gamma * k.cos()).sqrt())
        .sum::<f64>()
        / BZ_NODES as f64;
    let quadrature = 2.0 * (1.0 - mean);
    let plus = elliptic_e(2.0 / (1.0 + 1.0 / gamma));
    let minus = elliptic_e(2.0 / (1.0 - 1.0 / gamma));
    let closed_form = plus.zip(minus).map(|(p, m)| {
        2.0 * (1.0 - ((1.0 + gamma).sqrt() * p + (1.0 - gamma).sqrt() * m) / std::f64::consts::PI)
    });
    Ok(EnergyCorrection {
        closed_form,
        quadrature,
    })
}

/// Spin-S version of [`dimer_rpa_energy_correction`]: the dimer energy is
/// `-J S(S+1)` per rung while the zero-point shift keeps its form.
pub fn dimer_rpa_energy_ratio(gamma: f64, spin: SpinValue) -> Result<f64> {
    let c = dimer_rpa_energy_correction(gamma)?;
    Ok(c.closed_form.unwrap_or(c.quadrature) / spin.casimir_ratio())
}

/// Zero-point shift `(3J/2) sum_k (w_k/J - 1)` on a finite ring.
pub fn dimer_rpa_finite_correction(gamma: f64, j: f64, n_rungs: usize) -> Result<f64> {
    let s = dimer_rpa_dispersion(gamma, n_rungs);
    if !s.stable {
        return Err(Error::Unstable(gamma));
    }
    Ok(1.5 * j * s.branches[0].iter().map(|w| w - 1.0).sum::<f64>())
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn dispersion_reflection_and_stability(gamma in -0.99f64..0.99, half in 2usize..20) {
            let n = 2 * half;
            let w = &dimer_rpa_dispersion(gamma, n).branches[0];
            for k in 1..n {
                prop_assert!((w[k] - w[n - k]).abs() < 1e-12);
            }
            prop_assert!(w.iter().all(|x| x.is_finite() && *x > 0.0));
            prop_assert!(dimer_rpa_stability(gamma));
            prop_assert!(dimer_rpa_energy_correction(gamma).unwrap().quadrature >= -1e-12);
        }

        #[test]
        fn unstable_beyond_unit_gamma(gamma in 1.0f64..5.0, sign in prop::bool::ANY) {
            let g = if sign { gamma } else { -gamma };
            prop_assert!(!dimer_rpa_stability(g));
            prop_assert!(dimer_rpa_energy_correction(g).is_err());
        }
    }
}
