//! Closed-form pair fidelities between the rung-singlet product and a
//! coplanar product state.

use std::f64::consts::PI;

use crate::exact::srmf::PairKind;
use crate::spin::SpinValue;

/// Tabulated values: `sin^{2S}(|phi|/2) / (2S+1)` on a rung and
/// `1/(2S+1)` across rungs.
pub fn dimer_spiral_pair_fidelity(spin: SpinValue, phi_tilde: f64, kind: PairKind) -> f64 {
    let d = spin.dim() as f64;
    match kind {
        PairKind::Rung => (0.5 * phi_tilde.abs()).sin().powi(spin.twice_s() as i32) / d,
        PairKind::OffRung => 1.0 / d,
    }
}

/// The fidelity of a pure rung singlet with a pure coherent pair is their
/// overlap, `sin^{2S}(|phi|/2) / sqrt(2S+1)`, which differs from the
/// tabulated rung value by a factor `sqrt(2S+1)`.
pub fn dimer_spiral_pair_fidelity_exact(spin: SpinValue, phi_tilde: f64, kind: PairKind) -> f64 {
    let d = spin.dim() as f64;
    match kind {
        PairKind::Rung => (0.5 * phi_tilde.abs()).sin().powi(spin.twice_s() as i32) / d.sqrt(),
        PairKind::OffRung => 1.0 / d,
    }
}

/// Default `phi~` on the line `J' = 2 J2`: `2(pi - theta~)` with
/// `cos theta~ = -J'/(2J)`, folded into `[0, pi]`.
pub fn default_phi_tilde(j: f64, jp: f64) -> f64 {
    let theta = (-jp / (2.0 * j)).acos();
    let phi = 2.0 * (PI - theta);
    if phi > PI {
        2.0 * PI - phi
    } else {
        phi
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tabulated_values() {
        let half = SpinValue::half();
        assert!((dimer_spiral_pair_fidelity(half, PI, PairKind::Rung) - 0.5).abs() < 1e-15);
        assert!((dimer_spiral_pair_fidelity(SpinValue::one(), 0.3, PairKind::OffRung) - 1.0 / 3.0).abs() < 1e-15);
        let one = dimer_spiral_pair_fidelity(SpinValue::one(), PI / 2.0, PairKind::Rung);
        assert!((one - 1.0 / 6.0).abs() < 1e-15);
        let exact = dimer_spiral_pair_fidelity_exact(half, PI, PairKind::Rung);
        assert!((exact - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn default_angle_on_line() {
        // J' = 0: theta = pi/2, phi = pi
        assert!((default_phi_tilde(1.0, 0.0) - PI).abs() < 1e-15);
        let p = default_phi_tilde(1.0, 0.6);
        assert!(p > 0.0 && p < PI);
    }
}
