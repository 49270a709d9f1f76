//! Ground states and low spectra assembled from `Sz` sectors.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::eigen::{eigen_solvers, group_degeneracies, EigenOptions, EigenSolver, LanczosSolver, SpectrumResult};
use super::sector::{nonnegative_sectors, sector_hamiltonian, SectorBasis};
use crate::error::Result;
use crate::model::dimer::dimer_energy;
use crate::model::ladder::{uniform_spec, Boundary, LadderSpec, UniformCouplings};
use crate::model::state::StateVector;
use crate::spin::SpinValue;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct EdOptions {
    pub solver: String,
    pub eigen: EigenOptions,
    /// Visit every `Sz` sector instead of the two smallest `|Sz|`.
    pub full_sweep: bool,
}

impl Default for EdOptions {
    fn default() -> Self {
        Self {
            solver: "auto".into(),
            eigen: EigenOptions::default(),
            full_sweep: false,
        }
    }
}

impl EdOptions {
    fn sectors(&self, spec: &LadderSpec) -> Vec<i64> {
        let all = nonnegative_sectors(spec.spin(), spec.n_sites());
        if self.full_sweep {
            all
        } else {
            all.into_iter().take(2).collect()
        }
    }
}

pub fn sector_spectrum(
    spec: &LadderSpec,
    twice_sz: i64,
    solver: &dyn EigenSolver,
    opts: &EigenOptions,
) -> Result<(SectorBasis, SpectrumResult)> {
    let basis = SectorBasis::for_spec(spec, twice_sz)?;
    let h = sector_hamiltonian(spec, &basis)?;
    let res = solver.solve(&h, opts)?;
    Ok((basis, res))
}

/// Lowest `opts.n_levels` energies of one sector by restarted Lanczos.
pub fn lanczos_ground(spec: &LadderSpec, twice_sz: i64, opts: &EigenOptions) -> Result<SpectrumResult> {
    Ok(sector_spectrum(spec, twice_sz, &LanczosSolver, opts)?.1)
}

#[derive(Debug, Clone)]
pub struct GroundState {
    pub energy: f64,
    pub twice_sz: i64,
    /// Degeneracy inside the winning sector.
    pub sector_degeneracy: usize,
    pub residual: f64,
    pub converged: bool,
    pub state: StateVector,
}

pub fn ground_state_full(spec: &LadderSpec, opts: &EdOptions) -> Result<GroundState> {
    let solver = eigen_solvers();
    let solver = solver.get(&opts.solver)?;
    let mut best: Option<(SectorBasis, SpectrumResult)> = None;
    for t in opts.sectors(spec) {
        let (basis, res) = sector_spectrum(spec, t, solver, &opts.eigen)?;
        let better = match &best {
            None => true,
            Some((_, b)) => {
                let tol = opts.eigen.degeneracy_tol * b.ground_energy().abs().max(1.0);
                res.ground_energy() < b.ground_energy() - tol
            }
        };
        if better {
            best = Some((basis, res));
        }
    }
    let (basis, res) = best.expect("at least one sector");
    let vectors = match &res.states {
        Some(v) => v.clone(),
        None => {
            let eigen = EigenOptions {
                want_vectors: true,
                ..opts.eigen.clone()
            };
            sector_spectrum(spec, basis.twice_sz(), solver, &eigen)?.1.states.unwrap()
        }
    };
    let mut state = basis.embed(&vectors[0])?;
    state.fix_phase();
    Ok(GroundState {
        energy: res.ground_energy(),
        twice_sz: basis.twice_sz(),
        sector_degeneracy: res.ground_degeneracy(),
        residual: res.residuals[0],
        converged: res.converged,
        state,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Level {
    pub energy: f64,
    pub twice_sz: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowSpectrum {
    /// Levels from all visited sectors and their `Sz -> -Sz` mirrors.
    pub levels: Vec<Level>,
    pub degeneracy_groups: Vec<Vec<usize>>,
    pub converged: bool,
}

impl LowSpectrum {
    pub fn ground_energy(&self) -> f64 {
        self.levels[0].energy
    }

    /// `E1 - E0` between the two lowest distinct levels.
    pub fn gap(&self) -> Option<f64> {
        let g = self.degeneracy_groups.get(1)?;
        Some(self.levels[g[0]].energy - self.levels[0].energy)
    }
}

/// Lowest `n_levels` per visited sector, merged and truncated to the window
/// in which every sector is complete.
pub fn low_spectrum(spec: &LadderSpec, n_levels: usize, opts: &EdOptions) -> Result<LowSpectrum> {
    let registry = eigen_solvers();
    let solver = registry.get(&opts.solver)?;
    let eigen = EigenOptions {
        n_levels,
        want_vectors: false,
        ..opts.eigen.clone()
    };
    let mut levels = Vec::new();
    let mut ceiling = f64::INFINITY;
    let mut converged = true;
    for t in opts.sectors(spec) {
        let (basis, res) = sector_spectrum(spec, t, solver, &eigen)?;
        converged &= res.converged;
        if res.energies.len() < basis.dim() {
            ceiling = ceiling.min(*res.energies.last().unwrap());
        }
        for &e in &res.energies {
            levels.push(Level { energy: e, twice_sz: t });
            if t != 0 {
                levels.push(Level { energy: e, twice_sz: -t });
            }
        }
    }
    let slack = opts.eigen.degeneracy_tol * ceiling.abs().max(1.0);
    levels.retain(|l| l.energy <= ceiling + slack);
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.twice_sz.cmp(&b.twice_sz)));
    let energies: Vec<f64> = levels.iter().map(|l| l.energy).collect();
    let degeneracy_groups = group_degeneracies(&energies, opts.eigen.degeneracy_tol);
    Ok(LowSpectrum {
        levels,
        degeneracy_groups,
        converged,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub x: f64,
    pub ground_energy: f64,
    pub dimer_energy: f64,
    /// `E_GS / E_dim - 1`.
    pub relative: f64,
}

pub fn relative_energy(spec: &LadderSpec, opts: &EdOptions) -> Result<(f64, f64, f64)> {
    let eg = ground_state_full(spec, opts)?.energy;
    let ed = dimer_energy(spec).energy;
    Ok((eg, ed, eg / ed - 1.0))
}

/// Relative ground energy at each `(x, spec)` point, evaluated in parallel and
/// returned in input order.
pub fn relative_energy_curve(
    points: &[(f64, LadderSpec)],
    opts: &EdOptions,
) -> Vec<Result<CurvePoint>> {
    points
        .par_iter()
        .map(|(x, spec)| {
            let (eg, ed, rel) = relative_energy(spec, opts)?;
            Ok(CurvePoint {
                x: *x,
                ground_energy: eg,
                dimer_energy: ed,
                relative: rel,
            })
        })
        .collect()
}

pub const DEPARTURE_THRESHOLD: f64 = 1e-8;

/// Smallest `J'/J` on the line `J2 = J2' = J'/2` (periodic, `J = 1`) where the
/// ED ground state falls below the dimer energy. Scans `steps` points on
/// `(0, jp_max]` and bisects the first bracket to `resolution`.
pub fn ed_departure_point(
    spin: SpinValue,
    n_rungs: usize,
    jp_max: f64,
    steps: usize,
    resolution: f64,
    opts: &EdOptions,
) -> Result<Option<f64>> {
    let departed = |jp: f64| -> Result<bool> {
        let spec = uniform_spec(
            n_rungs,
            spin,
            UniformCouplings::dimer_line(1.0, jp),
            Boundary::Periodic,
        )?;
        Ok(relative_energy(&spec, opts)?.2 > DEPARTURE_THRESHOLD)
    };
    let mut lo = 0.0;
    let mut hi = None;
    for i in 1..=steps {
        let jp = jp_max * i as f64 / steps as f64;
        if departed(jp)? {
            hi = Some(jp);
            break;
        }
        lo = jp;
    }
    let Some(mut hi) = hi else {
        return Ok(None);
    };
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if departed(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}
