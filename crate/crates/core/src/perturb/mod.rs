//! Low-order energies of excitations over the dimer state on the line
//! `J' = 2 J2`, in units of `J` and as functions of `x = J'/J`.

mod gap;

pub use gap::{gap_estimate, gap_vs_ed, GapEstimate, GapRow, SectorEnergy};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spin::SpinValue;

/// Which family of unperturbed states a sector energy refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum SectorFamily {
    Dimer,
    /// One rung excited to a triplet with polarization `mu`.
    OneExcitation { mu: usize },
    /// Two triplets `distance` rungs apart.
    TwoExcitation { distance: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerturbSector {
    pub j_total: u8,
    /// Unperturbed energy in units of `J`.
    pub epsilon: u8,
    pub k: f64,
    pub family: SectorFamily,
}

impl PerturbSector {
    /// `Delta E / J` for this sector.
    pub fn energy(&self, spin: SpinValue, x: f64) -> Result<f64> {
        match self.family {
            SectorFamily::Dimer => Ok(0.0),
            SectorFamily::OneExcitation { .. } => Ok(one_excitation_energy(self.k, spin, x)),
            SectorFamily::TwoExcitation { distance } => two_excitation_energy(distance, self.k, spin, x),
        }
    }
}

/// Sectors up to `epsilon = 2` on `n_rungs` momenta; two-excitation states
/// are listed up to distance 3, which stands for every `j > 2`.
pub fn sector_table(n_rungs: usize) -> Vec<PerturbSector> {
    let mut out = vec![PerturbSector {
        j_total: 0,
        epsilon: 0,
        k: 0.0,
        family: SectorFamily::Dimer,
    }];
    for k in crate::rpa::momentum_grid(n_rungs) {
        for mu in 0..3 {
            out.push(PerturbSector {
                j_total: 1,
                epsilon: 1,
                k,
                family: SectorFamily::OneExcitation { mu },
            });
        }
    }
    for k in crate::rpa::momentum_grid(n_rungs) {
        for distance in 1..=3 {
            for j_total in [0, 1] {
                out.push(PerturbSector {
                    j_total,
                    epsilon: 2,
                    k,
                    family: SectorFamily::TwoExcitation { distance },
                });
            }
        }
    }
    out
}

/// Three-fold degenerate branch `1 - sigma x^2 cos^2(k/2) / 2`, with
/// `sigma = S(S+1) / (3/4)`.
pub fn one_excitation_energy(k: f64, spin: SpinValue, x: f64) -> f64 {
    1.0 - spin.casimir_ratio() * x * x * (0.5 * k).cos().powi(2) / 2.0
}

pub const ONE_EXCITATION_DEGENERACY: usize = 3;

pub fn two_excitation_energy(distance: usize, k: f64, spin: SpinValue, x: f64) -> Result<f64> {
    let sigma = spin.casimir_ratio();
    match distance {
        0 => Err(Error::IndexOutOfRange { index: 0, limit: 1 }),
        1 => Ok(2.0 - x - sigma * (0.5 * k).cos().powi(2) / 2.0 * x * x),
        2 => Ok(2.0 - sigma * x * x / 4.0),
        _ => Ok(2.0 - sigma * x * x / 2.0),
    }
}

/// Partially resummed `(Delta E_pair, Delta E_single)` at `k = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Resummed {
    pub pair: f64,
    pub single: f64,
}

pub fn resummed_energies(spin: SpinValue, x: f64) -> Result<Resummed> {
    if x >= 1.0 {
        return Err(Error::Pole(format!("resummed pair energy needs J'/J < 1, got {x}")));
    }
    let sigma = spin.casimir_ratio();
    Ok(Resummed {
        pair: 2.0 - x - sigma * 0.5 / (1.0 - x) * x * x,
        single: 1.0 - sigma * x * x / (2.0 * (1.0 - 0.5 * x)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalCoupling {
    pub jp_over_j: f64,
    /// False for spin 1/2, where the predicted crossing does not occur.
    pub valid: bool,
}

/// Zero of the resummed pair energy,
/// `x = (sqrt(1 + 4 sigma) - 3) / (sigma - 2)`.
pub fn critical_coupling(spin: SpinValue) -> Result<CriticalCoupling> {
    let sigma = spin.casimir_ratio();
    if (sigma - 2.0).abs() < 1e-12 {
        return Err(Error::Pole("sigma = 2".into()));
    }
    Ok(CriticalCoupling {
        jp_over_j: ((1.0 + 4.0 * sigma).sqrt() - 3.0) / (sigma - 2.0),
        valid: spin.twice_s() > 1,
    })
}

/// Bisection for the zero of the resummed pair energy on `(0, 1)`.
pub fn critical_coupling_bisect(spin: SpinValue, tol: f64) -> Result<f64> {
    let f = |x: f64| resummed_energies(spin, x).map(|r| r.pair);
    let (mut lo, mut hi) = (0.0, 1.0 - 1e-12);
    if f(hi)? > 0.0 {
        return Err(Error::Unsupported("no sign change of the pair energy".into()));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spin(t: u32) -> SpinValue {
        SpinValue::new(t).unwrap()
    }

    #[test]
    fn sector_formulas() {
        assert!((two_excitation_energy(1, 0.0, spin(1), 0.5).unwrap() - 1.375).abs() < 1e-14);
        assert!((two_excitation_energy(3, 0.0, spin(2), 0.3).unwrap() - 1.88).abs() < 1e-14);
        assert_eq!(two_excitation_energy(7, 1.0, spin(3), 0.0).unwrap(), 2.0);
        assert!(two_excitation_energy(0, 0.0, spin(1), 0.1).is_err());
        assert!((one_excitation_energy(0.0, spin(1), 0.5) - 0.875).abs() < 1e-14);
        assert!((one_excitation_energy(std::f64::consts::PI, spin(1), 0.5) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn resummed_values() {
        let r = resummed_energies(spin(2), 0.5).unwrap();
        assert!((r.pair - 5.0 / 6.0).abs() < 1e-14);
        assert!((r.single - 5.0 / 9.0).abs() < 1e-14);
        assert!(resummed_energies(spin(1), 0.76).unwrap().pair.abs() < 0.05);
        assert!(resummed_energies(spin(1), 1.0).is_err());
    }

    #[test]
    fn critical_values() {
        let c = critical_coupling(spin(1)).unwrap();
        assert!((c.jp_over_j - (3.0 - 5f64.sqrt())).abs() < 1e-14 && !c.valid);
        let c1 = critical_coupling(spin(2)).unwrap();
        assert!(((c1.jp_over_j) - ((35.0f64 / 3.0).sqrt() - 3.0) * 1.5).abs() < 1e-14 && c1.valid);
        for t in 1..8 {
            let a = critical_coupling(spin(t)).unwrap().jp_over_j;
            assert!((a - critical_coupling_bisect(spin(t), 1e-13).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn table_shape() {
        let t = sector_table(4);
        assert_eq!(t.len(), 1 + 12 + 24);
        assert!(t.iter().all(|s| s.energy(spin(1), 0.0).unwrap() == s.epsilon as f64));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn critical_coupling_decreases_and_matches_bisection(twice in 2u32..16) {
            let lo = critical_coupling(SpinValue::new(twice - 1).unwrap()).unwrap().jp_over_j;
            let hi = critical_coupling(SpinValue::new(twice).unwrap()).unwrap().jp_over_j;
            prop_assert!(hi < lo);
            let b = critical_coupling_bisect(SpinValue::new(twice).unwrap(), 1e-12).unwrap();
            prop_assert!((b - hi).abs() < 1e-9);
        }
    }
}
