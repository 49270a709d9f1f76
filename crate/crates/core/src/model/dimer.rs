//! Rung-singlet product state, its exactness conditions and energy bounds.

use num_complex::Complex64;

use super::ladder::{LadderSpec, UniformCouplings};
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::spin::SpinValue;

pub const DEFAULT_CONSTRAINT_TOL: f64 = 1e-12;

/// Two-site singlet `(2S+1)^{-1/2} sum_m (-1)^{m+S} |-m>|m>`; the first
/// factor lives on the fast site.
pub fn singlet_state(spin: SpinValue) -> StateVector {
    let d = spin.dim();
    let norm = 1.0 / (d as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    for k in 0..d {
        // second site digit k carries m, first carries -m (digit d-1-k)
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        amps[(d - 1 - k) + d * k] = Complex64::new(sign * norm, 0.0);
    }
    StateVector {
        amplitudes: amps,
        twice_sz: Some(0),
    }
}

/// Tensor product of rung singlets on every rung `(2r, 2r+1)`.
pub fn dimer_state(spec: &LadderSpec) -> StateVector {
    let singlet = singlet_state(spec.spin());
    let mut out = singlet.clone();
    for _ in 1..spec.n_rungs() {
        out = out.tensor(&singlet);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimerEnergy {
    pub energy: f64,
    /// True when the dimer state is an exact eigenstate, false when the value
    /// is only its expectation.
    pub eigenstate: bool,
}

pub fn dimer_energy(spec: &LadderSpec) -> DimerEnergy {
    dimer_energy_with_tol(spec, DEFAULT_CONSTRAINT_TOL)
}

pub fn dimer_energy_with_tol(spec: &LadderSpec, tol: f64) -> DimerEnergy {
    let total_j: f64 = spec.couplings().j.iter().sum();
    let eigenstate = check_dimer_constraint_with_tol(spec, tol)
        .iter()
        .all(|&ok| ok);
    DimerEnergy {
        energy: -spec.spin().casimir() * total_j,
        eigenstate,
    }
}

/// Per-rung check of `J'(i) = J2(i) + J2'(i)`. Under open boundaries the
/// last rung's wrapping bonds are absent and it always passes.
pub fn check_dimer_constraint(spec: &LadderSpec) -> Vec<bool> {
    check_dimer_constraint_with_tol(spec, DEFAULT_CONSTRAINT_TOL)
}

pub fn check_dimer_constraint_with_tol(spec: &LadderSpec, tol: f64) -> Vec<bool> {
    let c = spec.couplings();
    let n = spec.n_rungs();
    (0..n)
        .map(|i| {
            if spec.boundary() == super::ladder::Boundary::Open && i + 1 == n {
                return true;
            }
            (c.jp[i] - c.j2[i] - c.j2p[i]).abs() <= tol
        })
        .collect()
}

fn symmetric_uniform(spec: &LadderSpec) -> Result<UniformCouplings> {
    let u = spec.require_uniform()?;
    u.require_symmetric_legs()?;
    Ok(u)
}

/// Sufficient condition for the dimer state to be the ground state:
/// `J' = 2 J2 < J` for `S = 1/2` and `< J/(S+1)` for larger spin.
pub fn sufficient_gs_condition(spec: &LadderSpec) -> Result<bool> {
    sufficient_gs_condition_with_tol(spec, DEFAULT_CONSTRAINT_TOL)
}

pub fn sufficient_gs_condition_with_tol(spec: &LadderSpec, tol: f64) -> Result<bool> {
    let u = symmetric_uniform(spec)?;
    if (u.jp - 2.0 * u.j2).abs() > tol {
        return Ok(false);
    }
    Ok(u.jp < sufficient_gs_bound(spec.spin(), u.j))
}

/// Upper end of the provable dimer region on the line `J' = 2 J2`.
pub fn sufficient_gs_bound(spin: SpinValue, j: f64) -> f64 {
    if spin.twice_s() == 1 {
        j
    } else {
        j / (spin.s() + 1.0)
    }
}

/// Term-by-term lower bound on the ground energy on the line
/// `J2 = J2' = J'/2`.
pub fn gs_energy_lower_bound(spec: &LadderSpec) -> Result<f64> {
    let u = symmetric_uniform(spec)?;
    let s = spec.spin().s();
    Ok(spec.n_rungs() as f64 * block_minimum(s, spec.spin().twice_s(), u.j, u.jp))
}

fn block_minimum(s: f64, twice_s: u32, j: f64, jp: f64) -> f64 {
    let dj = j - jp;
    (0..=twice_s)
        .map(|l| {
            let l = l as f64;
            let a = (s - l).abs();
            0.5 * jp * a * (a + 1.0) + 0.5 * dj * l * (l + 1.0) - (j + 0.5 * jp) * s * (s + 1.0)
        })
        .fold(f64::INFINITY, f64::min)
}

/// `((2 J2 - J') / J) * S(S+1) / (3/4)`.
pub fn gamma_of(spec: &LadderSpec) -> Result<f64> {
    let u = spec.require_uniform()?;
    if u.j == 0.0 {
        return Err(Error::Pole("gamma requires J > 0".into()));
    }
    Ok(gamma_from(spec.spin(), u.j, u.jp, u.j2))
}

pub fn gamma_from(spin: SpinValue, j: f64, jp: f64, j2: f64) -> f64 {
    (2.0 * j2 - jp) / j * spin.casimir_ratio()
}
