//! Fidelity of exact rung states against local reference states.

use rayon::prelude::*;
use serde::Serialize;

use super::density::{fidelity, reduced_density_matrix, DensityMatrix};
use super::ground::{ground_state_full, EdOptions};
use super::srmf::{srmf_local_pair_state, PairKind};
use crate::error::Result;
use crate::meanfield::classical::classical_phase;
use crate::model::dimer::singlet_state;
use crate::model::ladder::LadderSpec;
use crate::registry::{Named, Registry};

pub trait LocalReference: Named + Send + Sync {
    /// Two-site reference state for the rung `(0, 1)` of `spec`.
    fn reference(&self, spec: &LadderSpec) -> Result<DensityMatrix>;
}

pub struct SingletReference;
/// Symmetry-restored classical optimum of the ladder couplings.
pub struct SrmfReference;

impl Named for SingletReference {
    fn name(&self) -> &'static str {
        "singlet"
    }
}

impl Named for SrmfReference {
    fn name(&self) -> &'static str {
        "srmf"
    }
}

impl LocalReference for SingletReference {
    fn reference(&self, spec: &LadderSpec) -> Result<DensityMatrix> {
        let spin = spec.spin();
        DensityMatrix::from_pure(&singlet_state(spin), vec![0, 1], spin.dim())
    }
}

impl LocalReference for SrmfReference {
    fn reference(&self, spec: &LadderSpec) -> Result<DensityMatrix> {
        let c = spec.require_uniform()?;
        let phase = classical_phase(&c, spec.spin());
        let angles = phase.angles.expect("classical phases carry angles");
        Ok(srmf_local_pair_state(&angles, spec.spin(), PairKind::Rung)?.rho)
    }
}

pub fn local_references() -> Registry<dyn LocalReference> {
    Registry::<dyn LocalReference>::new("fidelity reference")
        .with(Box::new(SingletReference))
        .with(Box::new(SrmfReference))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LandscapeRow {
    pub coords: Vec<f64>,
    pub ground_energy: f64,
    pub fidelity: f64,
}

/// Exact rung reduced state versus `reference` at every grid point, in
/// input order.
pub fn fidelity_landscape(
    points: &[(Vec<f64>, LadderSpec)],
    reference: &str,
    opts: &EdOptions,
) -> Result<Vec<Result<LandscapeRow>>> {
    let registry = local_references();
    let reference = registry.get(reference)?;
    Ok(points
        .par_iter()
        .map(|(coords, spec)| {
            let gs = ground_state_full(spec, opts)?;
            let rung = reduced_density_matrix(&gs.state, spec.spin(), spec.n_sites(), &[0, 1])?;
            let f = fidelity(&rung, &reference.reference(spec)?)?;
            Ok(LandscapeRow {
                coords: coords.clone(),
                ground_energy: gs.energy,
                fidelity: f,
            })
        })
        .collect())
}
