//! Spin-S family interpolating between the rung-singlet product and a
//! coplanar product state.
//!
//! With `c = cos(z/2)`, `s = sin(z/2)` and
//! `n^-2 = 1 - sin z cos tau sin^{2S}(f/2) / sqrt(2S+1)` the energy is
//! `n^2 [E_d (c^2 + n^-2 - 1) + s^2 E_sep(t, f)]`, exact at both endpoints.

use std::f64::consts::PI;

use serde::Serialize;

use super::classical::{spiral_energy, SpiralAngles};
use super::optim::{multi_start, start_lattice, NelderMeadOptions};
use crate::error::Result;
use crate::model::ladder::UniformCouplings;
use crate::spin::SpinValue;

/// Overlap of the rung singlet with two coplanar coherent spins at relative
/// angle `phi`.
pub fn singlet_coherent_overlap(spin: SpinValue, phi: f64) -> f64 {
    (0.5 * phi).sin().abs().powi(spin.twice_s() as i32) / (spin.dim() as f64).sqrt()
}

#[allow(clippy::too_many_arguments)]
pub fn general_s_family_energy(
    theta: f64,
    phi: f64,
    zeta: f64,
    tau: f64,
    spin: SpinValue,
    c: &UniformCouplings,
    n_rungs: usize,
) -> f64 {
    let e_d = -c.j * n_rungs as f64 * spin.casimir();
    let e_sep = spiral_energy(&SpiralAngles { theta, phi }, c, spin, n_rungs);
    let inv_n2 = 1.0 - zeta.sin() * tau.cos() * singlet_coherent_overlap(spin, phi);
    let (cz, sz) = ((0.5 * zeta).cos(), (0.5 * zeta).sin());
    (e_d * (cz * cz + inv_n2 - 1.0) + sz * sz * e_sep) / inv_n2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyMinimum {
    pub theta: f64,
    pub phi: f64,
    pub zeta: f64,
    pub tau: f64,
    /// Energy per rung.
    pub energy: f64,
}

/// Multi-start minimum of the family energy per rung.
pub fn general_s_family_minimum(spin: SpinValue, c: &UniformCouplings) -> FamilyMinimum {
    let bounds = [(-PI, PI), (0.0, PI), (0.0, PI), (-PI, PI)];
    let starts = start_lattice(&bounds, &[2, 2, 2, 2]);
    let f = |x: &[f64]| general_s_family_energy(x[0], x[1], x[2], x[3], spin, c, 1);
    let (x, e) = multi_start(f, &starts, &bounds, NelderMeadOptions::default());
    // the endpoints are always candidates
    let dimer = -c.j * spin.casimir();
    if dimer <= e {
        return FamilyMinimum {
            theta: 0.0,
            phi: PI,
            zeta: 0.0,
            tau: 0.0,
            energy: dimer,
        };
    }
    FamilyMinimum {
        theta: x[0],
        phi: x[1],
        zeta: x[2],
        tau: x[3],
        energy: e,
    }
}

pub const SWITCH_TOL: f64 = 1e-10;

/// `J'/J` on the line `J2 = J2' = J'/2` where the family minimum leaves the
/// dimer endpoint. `None` when no switch occurs for `J' <= J`.
pub fn general_s_transition(spin: SpinValue) -> Result<Option<f64>> {
    let below_dimer = |jp: f64| {
        let c = UniformCouplings::dimer_line(1.0, jp);
        let m = general_s_family_minimum(spin, &c);
        m.energy < -spin.casimir() - SWITCH_TOL * spin.casimir()
    };
    // search slightly past J so that a crossing exactly at J is bracketed
    let jp_max = 2.0;
    let steps = 40;
    let mut lo = 0.0;
    let mut hi = None;
    for i in 1..=steps {
        let jp = jp_max * i as f64 / steps as f64;
        if below_dimer(jp) {
            hi = Some(jp);
            break;
        }
        lo = jp;
    }
    let Some(mut hi) = hi else {
        return Ok(None);
    };
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if below_dimer(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok((x <= 1.0 + 1e-6).then_some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        let c = UniformCouplings::symmetric(1.0, 0.7, 0.2);
        for twice in 1..=6 {
            let spin = SpinValue::new(twice).unwrap();
            let e0 = general_s_family_energy(0.4, 1.3, 0.0, 0.2, spin, &c, 4);
            assert!((e0 + 4.0 * spin.casimir()).abs() < 1e-12);
            let epi = general_s_family_energy(0.4, 1.3, PI, 0.2, spin, &c, 4);
            let sep = spiral_energy(&SpiralAngles { theta: 0.4, phi: 1.3 }, &c, spin, 4);
            assert!((epi - sep).abs() < 1e-12);
        }
    }

    #[test]
    fn spin_half_line_prefers_dimer() {
        for jp in [0.2, 0.5, 0.9] {
            let m = general_s_family_minimum(SpinValue::half(), &UniformCouplings::dimer_line(1.0, jp));
            assert!((m.energy + 0.75).abs() < 1e-10);
        }
    }

    #[test]
    fn transitions() {
        assert_eq!(general_s_transition(SpinValue::one()).unwrap(), None);
        assert_eq!(general_s_transition(SpinValue::new(3).unwrap()).unwrap(), None);
        let s2 = general_s_transition(SpinValue::new(4).unwrap()).unwrap().unwrap();
        assert!((s2 - 1.0).abs() < 1e-6, "{s2}");
    }
}
