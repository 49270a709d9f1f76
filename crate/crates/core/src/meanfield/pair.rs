//! Rung-pair mean field for spin 1/2.
//!
//! Each rung carries the pair state
//! `cos(z/2)(sin(f/2)|s> + i cos(f/2)|y>) - e^{i tau} sin(z/2)|z>`, where
//! `|mu> = K_mu|s>` and `|s>` is the rung singlet. Successive rungs are
//! rotated about `y` by `theta`.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::classical::PhaseLabel;
use super::optim::{multi_start, start_lattice, NelderMeadOptions};
use crate::error::{Error, Result};
use crate::model::dimer::{gamma_from, singlet_state};
use crate::model::ladder::UniformCouplings;
use crate::spin::SpinValue;

pub const AGREEMENT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairMFParams {
    pub zeta: f64,
    pub phi: f64,
    pub tau: f64,
    pub theta: f64,
}

fn pair_gamma(c: &UniformCouplings) -> f64 {
    gamma_from(SpinValue::half(), c.j, c.jp, 0.5 * (c.j2 + c.j2p))
}

/// Closed-form energy per rung:
/// `(J/4)[cos f + cos z (cos f - 1) + sin^2 z (g cos t + (2J'/J) cos(t - f/2) cos(f/2))]`.
pub fn pair_mf_energy_per_rung(p: &PairMFParams, c: &UniformCouplings) -> f64 {
    let g = pair_gamma(c);
    let (z, f, t) = (p.zeta, p.phi, p.theta);
    0.25 * c.j
        * (f.cos()
            + z.cos() * (f.cos() - 1.0)
            + z.sin().powi(2)
                * (g * t.cos() + 2.0 * c.jp / c.j * (t - 0.5 * f).cos() * (0.5 * f).cos()))
}

pub fn pair_mf_energy(p: &PairMFParams, c: &UniformCouplings, n_rungs: usize) -> f64 {
    n_rungs as f64 * pair_mf_energy_per_rung(p, c)
}

/// Two-site pair state for `params`, first site on the fast digit.
pub fn pair_state(p: &PairMFParams) -> DVector<Complex64> {
    let spin = SpinValue::half();
    let s = DVector::from_column_slice(&singlet_state(spin).amplitudes);
    let ops = site_operators(spin);
    let k = |mu: usize| &ops[1][mu] * &s - &ops[0][mu] * &s;
    let (cz, sz) = ((0.5 * p.zeta).cos(), (0.5 * p.zeta).sin());
    let i = Complex64::new(0.0, 1.0);
    let mut v = &s * Complex64::new(cz * (0.5 * p.phi).sin(), 0.0)
        + k(1) * (i * cz * (0.5 * p.phi).cos())
        - k(2) * (Complex64::from_polar(sz, p.tau));
    let n = v.norm();
    v /= Complex64::new(n, 0.0);
    v
}

/// `[site][axis]` spin operators on the two-site space.
fn site_operators(spin: SpinValue) -> [[DMatrix<Complex64>; 3]; 2] {
    let d = spin.dim();
    let id = DMatrix::<Complex64>::identity(d, d);
    let m = spin.matrices();
    let first = [id.kronecker(&m[0]), id.kronecker(&m[1]), id.kronecker(&m[2])];
    let second = [m[0].kronecker(&id), m[1].kronecker(&id), m[2].kronecker(&id)];
    [first, second]
}

fn rotation_y(t: f64) -> Matrix3<f64> {
    Matrix3::new(t.cos(), 0.0, t.sin(), 0.0, 1.0, 0.0, -t.sin(), 0.0, t.cos())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairExpectations {
    pub first: Vector3<f64>,
    pub second: Vector3<f64>,
    /// `<S_first . S_second>`.
    pub internal: f64,
}

pub fn pair_expectations(p: &PairMFParams) -> PairExpectations {
    let v = pair_state(p);
    let ops = site_operators(SpinValue::half());
    let ev = |m: &DMatrix<Complex64>| (v.adjoint() * m * &v)[(0, 0)].re;
    let first = Vector3::new(ev(&ops[0][0]), ev(&ops[0][1]), ev(&ops[0][2]));
    let second = Vector3::new(ev(&ops[1][0]), ev(&ops[1][1]), ev(&ops[1][2]));
    let internal = (0..3).map(|a| ev(&(&ops[0][a] * &ops[1][a]))).sum();
    PairExpectations {
        first,
        second,
        internal,
    }
}

/// Energy per rung evaluated from the explicit pair state, including `tau`.
pub fn pair_mf_energy_from_state(p: &PairMFParams, c: &UniformCouplings) -> f64 {
    let e = pair_expectations(p);
    let r = rotation_y(p.theta);
    c.j * e.internal
        + c.jp * e.second.dot(&(r * e.first))
        + c.j2 * e.second.dot(&(r * e.second))
        + c.j2p * e.first.dot(&(r * e.first))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairMFMinimum {
    pub params: PairMFParams,
    /// Energy per rung.
    pub energy: f64,
    pub label: PhaseLabel,
    /// Closed-form energy per rung for comparison.
    pub closed_form: f64,
    pub agrees: bool,
}

/// `(params, energy per rung)` of the closed-form minimum.
pub fn pair_mf_closed_form(c: &UniformCouplings) -> (PairMFParams, f64, PhaseLabel) {
    let g = pair_gamma(c);
    if g.abs() < 1.0 {
        (
            PairMFParams {
                zeta: 0.0,
                phi: PI,
                tau: 0.0,
                theta: 0.0,
            },
            -0.75 * c.j,
            PhaseLabel::Dimer,
        )
    } else {
        let theta = if g > 0.0 { PI } else { 0.0 };
        (
            PairMFParams {
                zeta: (1.0 / g.abs()).acos(),
                phi: PI,
                tau: 0.0,
                theta,
            },
            -0.25 * c.j * (1.0 / g.abs() + 1.0 + g.abs()),
            PhaseLabel::ColinearBroken,
        )
    }
}

/// Multi-start minimization over `(zeta, phi, theta)` at `tau = 0` checked
/// against the closed form.
pub fn pair_mf_minimize(c: &UniformCouplings) -> Result<PairMFMinimum> {
    if c.j <= 0.0 {
        return Err(Error::Unsupported("pair mean field needs J > 0".into()));
    }
    let bounds = [(0.0, FRAC_PI_2), (0.0, PI), (-PI, PI)];
    let starts = start_lattice(&bounds, &[2, 2, 4]);
    let f = |x: &[f64]| {
        pair_mf_energy_per_rung(
            &PairMFParams {
                zeta: x[0],
                phi: x[1],
                tau: 0.0,
                theta: x[2],
            },
            c,
        )
    };
    let (x, e) = multi_start(f, &starts, &bounds, NelderMeadOptions::default());
    let (_, closed, label) = pair_mf_closed_form(c);
    Ok(PairMFMinimum {
        params: PairMFParams {
            zeta: x[0],
            phi: x[1],
            tau: 0.0,
            theta: x[2],
        },
        energy: e,
        label,
        closed_form: closed,
        agrees: (e - closed).abs() <= AGREEMENT_TOL * c.j.max(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meanfield::classical::{spiral_energy_per_rung, SpiralAngles};

    fn line_with_gamma(jp: f64, g: f64) -> UniformCouplings {
        UniformCouplings::symmetric(1.0, jp, 0.5 * (g + jp))
    }

    #[test]
    fn dimer_endpoint() {
        let c = UniformCouplings::symmetric(1.0, 0.6, 0.3);
        let p = PairMFParams {
            zeta: 0.0,
            phi: PI,
            tau: 0.0,
            theta: 0.4,
        };
        assert!((pair_mf_energy_per_rung(&p, &c) + 0.75).abs() < 1e-15);
    }

    #[test]
    fn product_limit_reduces_to_classical() {
        let c = UniformCouplings::symmetric(1.0, 0.6, 0.3);
        for &(f, t) in &[(PI, PI), (2.0, -1.1), (0.3, 0.8)] {
            let p = PairMFParams {
                zeta: FRAC_PI_2,
                phi: f,
                tau: 0.0,
                theta: t,
            };
            let classical = 0.25 * spiral_energy_per_rung(&SpiralAngles { theta: t, phi: f }, &c);
            assert!((pair_mf_energy_per_rung(&p, &c) - classical).abs() < 1e-14);
        }
    }

    #[test]
    fn state_route_matches_closed_form_and_ignores_tau() {
        for &(z, f, t, j2) in &[(0.3, 1.1, 0.7, 0.2), (1.2, 2.5, -2.0, 0.45), (0.9, 0.4, 3.0, 0.8)] {
            let c = UniformCouplings::symmetric(1.0, 0.6, j2);
            let p = PairMFParams {
                zeta: z,
                phi: f,
                tau: 0.0,
                theta: t,
            };
            let a = pair_mf_energy_per_rung(&p, &c);
            let b = pair_mf_energy_from_state(&p, &c);
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
            let i0 = pair_expectations(&p).internal;
            let i1 = pair_expectations(&PairMFParams { tau: 0.9, ..p }).internal;
            assert!((i0 - i1).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_cases() {
        let m = pair_mf_minimize(&line_with_gamma(0.3, 0.5)).unwrap();
        assert!(m.agrees && (m.energy + 0.75).abs() < 1e-8);
        let m = pair_mf_minimize(&line_with_gamma(0.3, 2.0)).unwrap();
        assert!(m.agrees && (m.energy + 0.875).abs() < 1e-8);
        let (p, _, _) = pair_mf_closed_form(&line_with_gamma(0.3, -2.0));
        assert_eq!(p.theta.cos(), 1.0);
    }
}
