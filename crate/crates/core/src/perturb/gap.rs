use rayon::prelude::*;
use serde::Serialize;

use super::{one_excitation_energy, resummed_energies, two_excitation_energy};
use crate::error::Result;
use crate::exact::ground::{ed_departure_point, low_spectrum, EdOptions};
use crate::model::ladder::{uniform_spec, Boundary, UniformCouplings};
use crate::spin::SpinValue;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectorEnergy {
    pub name: &'static str,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapEstimate {
    pub jp_over_j: f64,
    pub spin: SpinValue,
    pub sectors: Vec<SectorEnergy>,
    pub min_sector: &'static str,
    pub gap: f64,
}

impl GapEstimate {
    pub fn sector(&self, name: &str) -> Option<f64> {
        self.sectors.iter().find(|s| s.name == name).map(|s| s.energy)
    }
}

/// Sector energies at `k = 0` and their minimum; the resummed entries are
/// dropped past the pole.
pub fn gap_estimate(spin: SpinValue, x: f64) -> Result<GapEstimate> {
    let mut sectors = vec![
        SectorEnergy {
            name: "one_exc",
            energy: one_excitation_energy(0.0, spin, x),
        },
        SectorEnergy {
            name: "two_exc_j1",
            energy: two_excitation_energy(1, 0.0, spin, x)?,
        },
        SectorEnergy {
            name: "two_exc_j2",
            energy: two_excitation_energy(2, 0.0, spin, x)?,
        },
        SectorEnergy {
            name: "two_exc_far",
            energy: two_excitation_energy(3, 0.0, spin, x)?,
        },
    ];
    if let Ok(r) = resummed_energies(spin, x) {
        sectors.push(SectorEnergy {
            name: "resum_pair",
            energy: r.pair,
        });
        sectors.push(SectorEnergy {
            name: "resum_single",
            energy: r.single,
        });
    }
    let best = sectors
        .iter()
        .min_by(|a, b| a.energy.total_cmp(&b.energy))
        .copied()
        .expect("non-empty");
    Ok(GapEstimate {
        jp_over_j: x,
        spin,
        sectors,
        min_sector: best.name,
        gap: best.energy,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapRow {
    pub estimate: GapEstimate,
    pub ed_gap: Option<f64>,
}

/// Perturbative estimates next to the ED gap of a periodic `n_rungs` ring
/// on the line `J' = 2 J2`, plus the ED dimer departure point.
pub fn gap_vs_ed(
    spin: SpinValue,
    jp_grid: &[f64],
    n_rungs: usize,
    opts: &EdOptions,
) -> Result<(Vec<Result<GapRow>>, Option<f64>)> {
    let rows = jp_grid
        .par_iter()
        .map(|&x| {
            let estimate = gap_estimate(spin, x)?;
            let spec = uniform_spec(n_rungs, spin, UniformCouplings::dimer_line(1.0, x), Boundary::Periodic)?;
            let ed_gap = low_spectrum(&spec, 4, opts)?.gap();
            Ok(GapRow { estimate, ed_gap })
        })
        .collect();
    let departure = ed_departure_point(spin, n_rungs, 1.5, 30, 1e-4, opts)?;
    Ok((rows, departure))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_at_zero_is_one() {
        let g = gap_estimate(SpinValue::half(), 0.0).unwrap();
        assert_eq!(g.gap, 1.0);
        assert_eq!(g.min_sector, "one_exc");
        assert!(gap_estimate(SpinValue::half(), 1.2).unwrap().sector("resum_pair").is_none());
    }

    #[test]
    fn ed_gap_small_coupling() {
        let (rows, _) = gap_vs_ed(SpinValue::half(), &[0.05], 4, &EdOptions::default()).unwrap();
        let row = rows[0].as_ref().unwrap();
        assert!((row.ed_gap.unwrap() - 1.0).abs() < 0.05 * 0.05 * 4.0);
    }
}
