//! Symmetry-restored local pair states built from coplanar product states.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::density::DensityMatrix;
use crate::error::Result;
use crate::meanfield::classical::SpiralAngles;
use crate::model::state::StateVector;
use crate::spin::SpinValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairKind {
    /// Sites `(2r, 2r+1)`.
    Rung,
    /// Sites `(2r+1, 2r+2)`, joined by a `J'` bond.
    OffRung,
}

impl PairKind {
    /// In-plane angles of the two spins of the pair on rung 0.
    pub fn angles(self, a: &SpiralAngles) -> (f64, f64) {
        match self {
            PairKind::Rung => (0.0, a.phi),
            PairKind::OffRung => (a.phi, a.theta),
        }
    }
}

/// Two coherent spins polarized along `(sin a, 0, cos a)` and
/// `(sin b, 0, cos b)`, first one on the fast site.
pub fn coherent_pair_state(spin: SpinValue, a: f64, b: f64) -> StateVector {
    let first = StateVector::from_real(&spin.coherent_state(a));
    let second = StateVector::from_real(&spin.coherent_state(b));
    first.tensor(&second)
}

/// Projectors onto pair total spin `j = 0..=2S`, as Lagrange polynomials in
/// the pair Casimir.
pub fn pair_spin_projectors(spin: SpinValue) -> Vec<DMatrix<Complex64>> {
    let d = spin.dim();
    let id = DMatrix::<Complex64>::identity(d, d);
    let mut casimir = DMatrix::<Complex64>::zeros(d * d, d * d);
    for s in spin.matrices() {
        let total = id.kronecker(&s) + s.kronecker(&id);
        casimir += &total * &total;
    }
    let jmax = spin.twice_s() as usize;
    let big = DMatrix::<Complex64>::identity(d * d, d * d);
    (0..=jmax)
        .map(|j| {
            let cj = (j * (j + 1)) as f64;
            let mut p = big.clone();
            for k in (0..=jmax).filter(|&k| k != j) {
                let ck = (k * (k + 1)) as f64;
                p = p * (&casimir - &big * Complex64::new(ck, 0.0)) / Complex64::new(cj - ck, 0.0);
            }
            p
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct SrmfPairState {
    pub rho: DensityMatrix,
    /// `p_j` for `j = 0..=2S`.
    pub weights: Vec<f64>,
}

/// `sum_j p_j Pi_j / (2j+1)` with `p_j = <pair|Pi_j|pair>`.
pub fn srmf_pair_state(spin: SpinValue, a: f64, b: f64) -> Result<SrmfPairState> {
    let pair = coherent_pair_state(spin, a, b);
    let v = nalgebra::DVector::from_column_slice(&pair.amplitudes);
    let projectors = pair_spin_projectors(spin);
    let d2 = spin.dim() * spin.dim();
    let mut rho = DMatrix::<Complex64>::zeros(d2, d2);
    let mut weights = Vec::with_capacity(projectors.len());
    for (j, p) in projectors.iter().enumerate() {
        let w = (v.adjoint() * p * &v)[(0, 0)].re;
        weights.push(w);
        rho += p * Complex64::new(w / (2 * j + 1) as f64, 0.0);
    }
    let rho = (&rho + rho.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(SrmfPairState {
        rho: DensityMatrix::new(vec![0, 1], spin.dim(), rho)?,
        weights,
    })
}

pub fn srmf_local_pair_state(
    angles: &SpiralAngles,
    spin: SpinValue,
    kind: PairKind,
) -> Result<SrmfPairState> {
    let (a, b) = kind.angles(angles);
    srmf_pair_state(spin, a, b)
}
