//! Coplanar classical spiral states.
//!
//! Spin `2r` points along angle `r theta`, spin `2r+1` along `r theta + phi`.
//! Energies are per rung in units of `S^2`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ladder::UniformCouplings;
use crate::spin::SpinValue;

pub const TIE_TOL: f64 = 1e-12;
pub const STATIONARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpiralAngles {
    pub theta: f64,
    pub phi: f64,
}

impl SpiralAngles {
    /// Maps onto `theta in (-pi, pi]`, `phi in [0, pi]` using the global
    /// reflection `(theta, phi) -> (-theta, -phi)`.
    pub fn new(theta: f64, phi: f64) -> Self {
        let (mut t, mut p) = (wrap(theta), wrap(phi));
        if p < 0.0 {
            t = wrap(-t);
            p = -p;
        }
        Self { theta: t, phi: p }
    }
}

fn wrap(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y <= -PI {
        y + 2.0 * PI
    } else {
        y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhaseLabel {
    Dimer,
    #[serde(rename = "Neel_0pi")]
    Neel0Pi,
    #[serde(rename = "Neel_pipi")]
    NeelPiPi,
    #[serde(rename = "Neel_pi0")]
    NeelPi0,
    Spiral,
    ColinearBroken,
}

impl PhaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            PhaseLabel::Dimer => "Dimer",
            PhaseLabel::Neel0Pi => "Neel_0pi",
            PhaseLabel::NeelPiPi => "Neel_pipi",
            PhaseLabel::NeelPi0 => "Neel_pi0",
            PhaseLabel::Spiral => "Spiral",
            PhaseLabel::ColinearBroken => "ColinearBroken",
        }
    }

    pub fn is_colinear(self) -> bool {
        matches!(
            self,
            PhaseLabel::Neel0Pi | PhaseLabel::NeelPiPi | PhaseLabel::NeelPi0
        )
    }
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PhaseLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            PhaseLabel::Dimer,
            PhaseLabel::Neel0Pi,
            PhaseLabel::NeelPiPi,
            PhaseLabel::NeelPi0,
            PhaseLabel::Spiral,
            PhaseLabel::ColinearBroken,
        ]
        .into_iter()
        .find(|l| l.as_str() == s)
        .ok_or_else(|| Error::Parse(format!("unknown phase label `{s}`")))
    }
}

fn leg_sum(c: &UniformCouplings) -> f64 {
    c.j2 + c.j2p
}

/// `J cos(phi) + J' cos(theta - phi) + (J2 + J2') cos(theta)`.
pub fn spiral_energy_per_rung(a: &SpiralAngles, c: &UniformCouplings) -> f64 {
    c.j * a.phi.cos() + c.jp * (a.theta - a.phi).cos() + leg_sum(c) * a.theta.cos()
}

/// Classical energy `N S^2 e(theta, phi)` of an `n_rungs` ladder.
pub fn spiral_energy(a: &SpiralAngles, c: &UniformCouplings, spin: SpinValue, n_rungs: usize) -> f64 {
    n_rungs as f64 * spin.s().powi(2) * spiral_energy_per_rung(a, c)
}

/// `(dE/dtheta, dE/dphi)` of [`spiral_energy_per_rung`].
pub fn spiral_gradient(a: &SpiralAngles, c: &UniformCouplings) -> [f64; 2] {
    let s = (a.theta - a.phi).sin();
    [
        -c.jp * s - leg_sum(c) * a.theta.sin(),
        -c.j * a.phi.sin() + c.jp * s,
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extremum {
    pub label: PhaseLabel,
    pub angles: SpiralAngles,
    /// Per rung, in units of `S^2`.
    pub energy: f64,
}

/// Closed-form spiral angles `(cos theta, cos phi)`, when `J, J', J2+J2' > 0`.
pub fn spiral_cosines(c: &UniformCouplings) -> Option<(f64, f64)> {
    let k = leg_sum(c);
    if c.j <= 0.0 || c.jp <= 0.0 || k <= 0.0 {
        return None;
    }
    let ct = c.j * c.jp / (2.0 * k * k) - c.j / (2.0 * c.jp) - c.jp / (2.0 * c.j);
    let cp = k * c.jp / (2.0 * c.j * c.j) - k / (2.0 * c.jp) - c.jp / (2.0 * k);
    Some((ct, cp))
}

/// Colinear extrema and, when it exists and is stationary, the spiral.
pub fn classical_extrema(c: &UniformCouplings) -> Vec<Extremum> {
    let mut out: Vec<Extremum> = [
        (PhaseLabel::NeelPiPi, PI, PI),
        (PhaseLabel::Neel0Pi, 0.0, PI),
        (PhaseLabel::NeelPi0, PI, 0.0),
    ]
    .into_iter()
    .map(|(label, t, p)| {
        let angles = SpiralAngles::new(t, p);
        Extremum {
            label,
            angles,
            energy: spiral_energy_per_rung(&angles, c),
        }
    })
    .collect();
    if let Some(sp) = spiral_extremum(c) {
        out.push(sp);
    }
    out
}

fn spiral_extremum(c: &UniformCouplings) -> Option<Extremum> {
    let (ct, cp) = spiral_cosines(c)?;
    if ct.abs() > 1.0 || cp.abs() > 1.0 {
        return None;
    }
    let phi = cp.acos();
    let t0 = ct.acos();
    [-t0, t0]
        .into_iter()
        .map(|t| SpiralAngles { theta: t, phi })
        .map(|a| {
            let g = spiral_gradient(&a, c);
            (a, g[0].hypot(g[1]))
        })
        .filter(|(_, g)| *g < STATIONARY_TOL * (1.0 + c.j + c.jp + leg_sum(c)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(a, _)| Extremum {
            label: PhaseLabel::Spiral,
            angles: SpiralAngles::new(a.theta, a.phi),
            energy: spiral_energy_per_rung(&a, c),
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePoint {
    pub label: PhaseLabel,
    /// Energy per rung (including the `S^2` factor for classical states).
    pub energy_per_rung: f64,
    pub angles: Option<SpiralAngles>,
    pub gamma: Option<f64>,
}

/// Lowest classical extremum; colinear labels win ties within [`TIE_TOL`].
pub fn classical_phase(c: &UniformCouplings, spin: SpinValue) -> PhasePoint {
    let ext = classical_extrema(c);
    let mut best = ext
        .iter()
        .filter(|e| e.label.is_colinear())
        .min_by(|a, b| a.energy.total_cmp(&b.energy))
        .copied()
        .expect("colinear candidates always present");
    if let Some(sp) = ext.iter().find(|e| e.label == PhaseLabel::Spiral) {
        if sp.energy < best.energy - TIE_TOL {
            best = *sp;
        }
    }
    PhasePoint {
        label: best.label,
        energy_per_rung: spin.s().powi(2) * best.energy,
        angles: Some(best.angles),
        gamma: None,
    }
}

/// Classical phase against the rung-singlet product, whose energy per rung
/// is `-J S(S+1)` for any couplings.
pub fn phase_with_dimer(c: &UniformCouplings, spin: SpinValue) -> PhasePoint {
    let classical = classical_phase(c, spin);
    let dimer = -c.j * spin.casimir();
    if dimer < classical.energy_per_rung - TIE_TOL {
        PhasePoint {
            label: PhaseLabel::Dimer,
            energy_per_rung: dimer,
            angles: None,
            gamma: None,
        }
    } else {
        classical
    }
}

/// Optimal spiral on the line `J' = J2 + J2'`: `cos theta = -J'/(2J)`,
/// `phi = 2(pi - theta)` folded into `[0, pi]`.
pub fn dimer_line_spiral(j: f64, jp: f64) -> Option<SpiralAngles> {
    let ct = -jp / (2.0 * j);
    if ct.abs() > 1.0 || j <= 0.0 {
        return None;
    }
    let theta = -ct.acos();
    Some(SpiralAngles::new(theta, 2.0 * theta + 2.0 * PI))
}

/// `J'/J` at which `-J S(S+1)` equals the line spiral energy
/// `-S^2 (J + J'^2/(2J))`.
pub fn dimer_vs_classical_crossover(spin: SpinValue) -> f64 {
    (2.0 / spin.s()).sqrt()
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    proptest! {
        #[test]
        fn minimum_beats_random_angles(jp in 0.0f64..2.0, j2 in 0.0f64..1.2, t in -PI..PI, f in -PI..PI) {
            let c = UniformCouplings::symmetric(1.0, jp, j2);
            let best = classical_phase(&c, SpinValue::half()).energy_per_rung / 0.25;
            prop_assert!(best <= spiral_energy_per_rung(&SpiralAngles::new(t, f), &c) + 1e-12);
        }
    }
}
