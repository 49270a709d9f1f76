//! Mean-field plus zero-point energies along coupling lines.

use rayon::prelude::*;
use serde::Serialize;

use super::dimer::dimer_rpa_energy_ratio;
use super::spiral::single_site_rpa_energy;
use crate::error::Result;
use crate::exact::ground::{ground_state_full, EdOptions};
use crate::meanfield::classical::classical_phase;
use crate::meanfield::mean_field_solvers;
use crate::model::dimer::gamma_from;
use crate::model::ladder::{LadderSpec, UniformCouplings};
use crate::registry::{Named, Registry};
use crate::spin::SpinValue;

/// Momenta used for the single-site zero-point sum.
pub const SINGLE_SITE_K: usize = 512;

/// Energies per rung; `rpa` is `None` where the fluctuations are unstable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RpaEstimate {
    pub mean_field: f64,
    pub rpa: Option<f64>,
}

pub trait RpaEnergyMethod: Named + Send + Sync {
    fn estimate(&self, c: &UniformCouplings, spin: SpinValue) -> Result<RpaEstimate>;
}

/// Spin waves over the classical state of one spin per cell.
pub struct SingleSite;
/// Triplet fluctuations over rung pairs.
pub struct Pair;

impl Named for SingleSite {
    fn name(&self) -> &'static str {
        "single-site"
    }
}

impl Named for Pair {
    fn name(&self) -> &'static str {
        "pair"
    }
}

impl RpaEnergyMethod for SingleSite {
    fn estimate(&self, c: &UniformCouplings, spin: SpinValue) -> Result<RpaEstimate> {
        let phase = classical_phase(c, spin);
        let rpa = phase
            .angles
            .and_then(|a| single_site_rpa_energy(&a, c, spin, SINGLE_SITE_K))
            .map(|e| e / SINGLE_SITE_K as f64);
        Ok(RpaEstimate {
            mean_field: phase.energy_per_rung,
            rpa,
        })
    }
}

impl RpaEnergyMethod for Pair {
    fn estimate(&self, c: &UniformCouplings, spin: SpinValue) -> Result<RpaEstimate> {
        let solver = if spin.twice_s() == 1 { "pair" } else { "general-s" };
        let mean_field = mean_field_solvers().get(solver)?.solve(c, spin)?.energy_per_rung;
        let gamma = gamma_from(spin, c.j, c.jp, 0.5 * (c.j2 + c.j2p));
        let dimer = -c.j * spin.casimir();
        let rpa = dimer_rpa_energy_ratio(gamma, spin).ok().map(|r| dimer * (1.0 + r));
        Ok(RpaEstimate { mean_field, rpa })
    }
}

pub fn rpa_methods() -> Registry<dyn RpaEnergyMethod> {
    Registry::<dyn RpaEnergyMethod>::new("rpa method")
        .with(Box::new(SingleSite))
        .with(Box::new(Pair))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RpaCurvePoint {
    pub x: f64,
    pub dimer_energy: f64,
    pub estimate: RpaEstimate,
    /// ED ground energy per rung when requested.
    pub exact: Option<f64>,
}

/// One row per `(x, spec)`; failures stay local to their row.
pub fn rpa_energy_curves(
    points: &[(f64, LadderSpec)],
    method: &dyn RpaEnergyMethod,
    ed: Option<&EdOptions>,
) -> Vec<Result<RpaCurvePoint>> {
    points
        .par_iter()
        .map(|(x, spec)| {
            let c = spec.require_uniform()?;
            let estimate = method.estimate(&c, spec.spin())?;
            let exact = match ed {
                Some(opts) => Some(ground_state_full(spec, opts)?.energy / spec.n_rungs() as f64),
                None => None,
            };
            Ok(RpaCurvePoint {
                x: *x,
                dimer_energy: -c.j * spec.spin().casimir(),
                estimate,
                exact,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ladder::{uniform_spec, Boundary};

    #[test]
    fn pair_is_exact_on_the_line() {
        let e = Pair
            .estimate(&UniformCouplings::symmetric(1.0, 0.6, 0.3), SpinValue::half())
            .unwrap();
        assert!((e.rpa.unwrap() + 0.75).abs() < 1e-14);
    }

    #[test]
    fn single_site_lowers_energy() {
        for j2 in [0.1, 0.3, 0.5] {
            let e = SingleSite
                .estimate(&UniformCouplings::symmetric(1.0, 0.6, j2), SpinValue::half())
                .unwrap();
            assert!(e.rpa.unwrap() <= e.mean_field + 1e-12);
        }
    }

    #[test]
    fn curves_join_ed() {
        let spec = uniform_spec(4, SpinValue::half(), UniformCouplings::symmetric(1.0, 0.6, 0.3), Boundary::Periodic)
            .unwrap();
        let rows = rpa_energy_curves(&[(0.3, spec)], &Pair, Some(&EdOptions::default()));
        let row = rows[0].as_ref().unwrap();
        assert!((row.exact.unwrap() + 0.75).abs() < 1e-10);
    }
}
