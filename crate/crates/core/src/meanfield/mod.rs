pub mod classical;
pub mod fidelity;
pub mod general;
pub mod optim;
pub mod pair;

use std::f64::consts::PI;

use serde::Serialize;

pub use classical::{
    classical_extrema, classical_phase, dimer_vs_classical_crossover, phase_with_dimer,
    spiral_energy, spiral_energy_per_rung, spiral_gradient, Extremum, PhaseLabel, PhasePoint,
    SpiralAngles,
};
pub use fidelity::{dimer_spiral_pair_fidelity, dimer_spiral_pair_fidelity_exact};
pub use general::{general_s_family_energy, general_s_family_minimum, general_s_transition};
pub use pair::{pair_mf_energy, pair_mf_minimize, PairMFParams};

use crate::error::{Error, Result};
use crate::model::dimer::gamma_from;
use crate::model::ladder::UniformCouplings;
use crate::registry::{Named, Registry};
use crate::spin::SpinValue;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanFieldResult {
    pub label: PhaseLabel,
    pub energy_per_rung: f64,
    pub angles: Option<SpiralAngles>,
    pub pair: Option<PairMFParams>,
    pub gamma: Option<f64>,
}

pub trait MeanFieldSolver: Named + Send + Sync {
    fn solve(&self, c: &UniformCouplings, spin: SpinValue) -> Result<MeanFieldResult>;
}

/// Closed-form classical extrema.
pub struct ClassicalClosedForm;
/// Grid scan of the classical energy followed by local polishing.
pub struct ClassicalNumeric;
/// Spin-1/2 rung-pair states.
pub struct PairMeanField;
/// Singlet/product interpolating family for any spin.
pub struct GeneralFamily;

impl Named for ClassicalClosedForm {
    fn name(&self) -> &'static str {
        "classical"
    }
}
impl Named for ClassicalNumeric {
    fn name(&self) -> &'static str {
        "classical-numeric"
    }
}
impl Named for PairMeanField {
    fn name(&self) -> &'static str {
        "pair"
    }
}
impl Named for GeneralFamily {
    fn name(&self) -> &'static str {
        "general-s"
    }
}

impl MeanFieldSolver for ClassicalClosedForm {
    fn solve(&self, c: &UniformCouplings, spin: SpinValue) -> Result<MeanFieldResult> {
        let p = classical_phase(c, spin);
        Ok(MeanFieldResult {
            label: p.label,
            energy_per_rung: p.energy_per_rung,
            angles: p.angles,
            pair: None,
            gamma: None,
        })
    }
}

impl MeanFieldSolver for ClassicalNumeric {
    fn solve(&self, c: &UniformCouplings, spin: SpinValue) -> Result<MeanFieldResult> {
        let n = 101;
        let mut best = (0.0, 0.0, f64::INFINITY);
        for i in 0..n {
            for k in 0..n {
                let t = -PI + 2.0 * PI * i as f64 / (n - 1) as f64;
                let f = 2.0 * PI * k as f64 / (n - 1) as f64;
                let e = spiral_energy_per_rung(&SpiralAngles { theta: t, phi: f }, c);
                if e < best.2 {
                    best = (t, f, e);
                }
            }
        }
        let bounds = [(-2.0 * PI, 2.0 * PI), (-2.0 * PI, 2.0 * PI)];
        let (x, e) = optim::multi_start(
            |x: &[f64]| spiral_energy_per_rung(&SpiralAngles { theta: x[0], phi: x[1] }, c),
            &[vec![best.0, best.1]],
            &bounds,
            optim::NelderMeadOptions {
                initial_step: 0.05,
                ..Default::default()
            },
        );
        let angles = SpiralAngles::new(x[0], x[1]);
        let closed = classical_phase(c, spin);
        let label = if (e - closed.energy_per_rung / spin.s().powi(2)).abs() < 1e-8 {
            closed.label
        } else {
            PhaseLabel::Spiral
        };
        Ok(MeanFieldResult {
            label,
            energy_per_rung: spin.s().powi(2) * e,
            angles: Some(angles),
            pair: None,
            gamma: None,
        })
    }
}

impl MeanFieldSolver for PairMeanField {
    fn solve(&self, c: &UniformCouplings, spin: SpinValue) -> Result<MeanFieldResult> {
        if spin.twice_s() != 1 {
            return Err(Error::Unsupported(format!(
                "pair mean field is defined for S = 1/2 only (got S = {spin})"
            )));
        }
        let m = pair_mf_minimize(c)?;
        Ok(MeanFieldResult {
            label: m.label,
            energy_per_rung: m.energy,
            angles: Some(SpiralAngles::new(m.params.theta, m.params.phi)),
            pair: Some(m.params),
            gamma: Some(gamma_from(spin, c.j, c.jp, 0.5 * (c.j2 + c.j2p))),
        })
    }
}

impl MeanFieldSolver for GeneralFamily {
    fn solve(&self, c: &UniformCouplings, spin: SpinValue) -> Result<MeanFieldResult> {
        let m = general_s_family_minimum(spin, c);
        let dimer = m.zeta == 0.0;
        Ok(MeanFieldResult {
            label: if dimer {
                PhaseLabel::Dimer
            } else {
                classical_phase(c, spin).label
            },
            energy_per_rung: m.energy,
            angles: (!dimer).then(|| SpiralAngles::new(m.theta, m.phi)),
            pair: None,
            gamma: None,
        })
    }
}

pub fn mean_field_solvers() -> Registry<dyn MeanFieldSolver> {
    Registry::<dyn MeanFieldSolver>::new("mean-field solver")
        .with(Box::new(ClassicalClosedForm))
        .with(Box::new(ClassicalNumeric))
        .with(Box::new(PairMeanField))
        .with(Box::new(GeneralFamily))
}
