//! Matrix-free Heisenberg Hamiltonian and local spin operators.
//!
//! Every operator is applied in gather form: each output amplitude is
//! accumulated from the configurations that map onto it, so the output
//! range can be split across workers without synchronisation.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::ladder::LadderSpec;
use super::state::{check_dim, StateVector};
use crate::error::{Error, Result};
use crate::spin::SpinValue;

pub const DENSE_CAP: usize = 10_000;
const PAR_CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// Sum (`J`) or difference (`K`) of the two spins on a rung.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RungOperator {
    Total,
    Relative,
}

fn powers(d: usize, n: usize) -> Vec<usize> {
    (0..n).map(|k| d.pow(k as u32)).collect()
}

/// `H|psi>` for the ladder described by `spec`.
pub fn apply_hamiltonian(spec: &LadderSpec, state: &StateVector) -> Result<StateVector> {
    let dim = spec.dimension();
    check_dim(dim, state.dim())?;
    let spin = spec.spin();
    let d = spin.dim();
    let pw = powers(d, spec.n_sites());
    let bonds = spec.bonds();
    let psi = &state.amplitudes;
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    out.par_chunks_mut(PAR_CHUNK)
        .enumerate()
        .for_each(|(chunk, slot)| {
            let base = chunk * PAR_CHUNK;
            for (offset, o) in slot.iter_mut().enumerate() {
                let c = base + offset;
                let mut acc = Complex64::new(0.0, 0.0);
                for bond in &bonds {
                    let (pa, pb) = (pw[bond.a], pw[bond.b]);
                    let ka = (c / pa) % d;
                    let kb = (c / pb) % d;
                    let zz = (spin.twice_m(ka) * spin.twice_m(kb)) as f64 / 4.0;
                    acc += psi[c] * (bond.coupling * zz);
                    // S+_a S-_b: source has (ka-1, kb+1)
                    if ka >= 1 && kb + 1 < d {
                        let src = c - pa + pb;
                        let el = spin.raise_element(ka - 1) * spin.lower_element(kb + 1);
                        acc += psi[src] * (0.5 * bond.coupling * el);
                    }
                    // S-_a S+_b: source has (ka+1, kb-1)
                    if kb >= 1 && ka + 1 < d {
                        let src = c + pa - pb;
                        let el = spin.lower_element(ka + 1) * spin.raise_element(kb - 1);
                        acc += psi[src] * (0.5 * bond.coupling * el);
                    }
                }
                *o = acc;
            }
        });
    Ok(StateVector {
        amplitudes: out,
        twice_sz: state.twice_sz,
    })
}

/// `<psi|H|psi> / <psi|psi>`.
pub fn energy_expectation(spec: &LadderSpec, state: &StateVector) -> Result<f64> {
    let h = apply_hamiltonian(spec, state)?;
    Ok(state.inner(&h).re / state.inner(state).re)
}

/// Dense Hamiltonian built column by column from [`apply_hamiltonian`].
pub fn hamiltonian_dense(spec: &LadderSpec) -> Result<DMatrix<Complex64>> {
    let dim = spec.dimension();
    if dim > DENSE_CAP {
        return Err(Error::SizeCap {
            dim: dim as u128,
            cap: DENSE_CAP as u128,
        });
    }
    let mut m = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let out = apply_hamiltonian(spec, &StateVector::basis(dim, col))?;
        for (row, v) in out.amplitudes.iter().enumerate() {
            m[(row, col)] = *v;
        }
    }
    Ok(m)
}

/// Applies `S^axis` of one site.
pub fn apply_site_component(
    spin: SpinValue,
    n_sites: usize,
    site: usize,
    axis: Axis,
    state: &StateVector,
) -> Result<StateVector> {
    apply_site_combination(spin, n_sites, &[(site, 1.0)], axis, state)
}

/// Applies `sum_s w_s S^axis_s` for the listed `(site, weight)` pairs.
pub fn apply_site_combination(
    spin: SpinValue,
    n_sites: usize,
    terms: &[(usize, f64)],
    axis: Axis,
    state: &StateVector,
) -> Result<StateVector> {
    let d = spin.dim();
    let dim = d.pow(n_sites as u32);
    check_dim(dim, state.dim())?;
    if let Some(&(site, _)) = terms.iter().find(|(s, _)| *s >= n_sites) {
        return Err(Error::IndexOutOfRange {
            index: site,
            limit: n_sites,
        });
    }
    let pw = powers(d, n_sites);
    let psi = &state.amplitudes;
    let i = Complex64::new(0.0, 1.0);
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    out.par_chunks_mut(PAR_CHUNK)
        .enumerate()
        .for_each(|(chunk, slot)| {
            let base = chunk * PAR_CHUNK;
            for (offset, o) in slot.iter_mut().enumerate() {
                let c = base + offset;
                let mut acc = Complex64::new(0.0, 0.0);
                for &(site, w) in terms {
                    let p = pw[site];
                    let k = (c / p) % d;
                    // (S+ psi)(c) and (S- psi)(c)
                    let plus = if k >= 1 {
                        psi[c - p] * spin.raise_element(k - 1)
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    let minus = if k + 1 < d {
                        psi[c + p] * spin.lower_element(k + 1)
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    let term = match axis {
                        Axis::X => (plus + minus) * 0.5,
                        Axis::Y => (plus - minus) / (2.0 * i),
                        Axis::Z => psi[c] * spin.m(k),
                    };
                    acc += term * w;
                }
                *o = acc;
            }
        });
    Ok(StateVector::new(out))
}

/// Applies a component of `J_r = S_{2r+1} + S_{2r}` or
/// `K_r = S_{2r+1} - S_{2r}` on rung `r`.
pub fn apply_rung_operator(
    spec: &LadderSpec,
    kind: RungOperator,
    rung: usize,
    axis: Axis,
    state: &StateVector,
) -> Result<StateVector> {
    if rung >= spec.n_rungs() {
        return Err(Error::IndexOutOfRange {
            index: rung,
            limit: spec.n_rungs(),
        });
    }
    let first_weight = match kind {
        RungOperator::Total => 1.0,
        RungOperator::Relative => -1.0,
    };
    apply_site_combination(
        spec.spin(),
        spec.n_sites(),
        &[(2 * rung, first_weight), (2 * rung + 1, 1.0)],
        axis,
        state,
    )
}

/// Component of the total spin over all sites.
pub fn apply_total_spin(
    spin: SpinValue,
    n_sites: usize,
    axis: Axis,
    state: &StateVector,
) -> Result<StateVector> {
    let terms: Vec<(usize, f64)> = (0..n_sites).map(|s| (s, 1.0)).collect();
    apply_site_combination(spin, n_sites, &terms, axis, state)
}

/// `(J_T)^2 |psi>`.
pub fn apply_total_spin_squared(
    spin: SpinValue,
    n_sites: usize,
    state: &StateVector,
) -> Result<StateVector> {
    let mut out = StateVector::zeros(state.dim());
    for axis in Axis::ALL {
        let once = apply_total_spin(spin, n_sites, axis, state)?;
        let twice = apply_total_spin(spin, n_sites, axis, &once)?;
        out.axpy(Complex64::new(1.0, 0.0), &twice);
    }
    Ok(out)
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::model::ladder::{build_spec, Boundary, CouplingPattern};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn couplings(n: usize) -> impl Strategy<Value = CouplingPattern> {
        let v = move || prop::collection::vec(0.0f64..1.5, n);
        (v(), v(), v(), v()).prop_map(|(j, jp, j2, j2p)| CouplingPattern { j, jp, j2, j2p })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn hermitian_and_spin_conserving(mut c in couplings(4), twice in 1u32..=2, seed in any::<u64>()) {
            // S=1 on three open rungs, S=1/2 on four periodic ones
            let (n, boundary) = if twice == 2 { (3, Boundary::Open) } else { (4, Boundary::Periodic) };
            for v in [&mut c.j, &mut c.jp, &mut c.j2, &mut c.j2p] {
                v.truncate(n);
            }
            let spin = SpinValue::new(twice).unwrap();
            let spec = build_spec(n, spin, c, boundary).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let dim = spin.dim().pow(2 * n as u32);
            let x = StateVector::random(dim, &mut rng);
            let y = StateVector::random(dim, &mut rng);
            let hx = apply_hamiltonian(&spec, &x).unwrap();
            let hy = apply_hamiltonian(&spec, &y).unwrap();
            prop_assert!((x.inner(&hy) - hx.inner(&y)).norm() < 1e-10);

            let n = spec.n_sites();
            let a = apply_total_spin_squared(spin, n, &hx).unwrap();
            let b = apply_hamiltonian(&spec, &apply_total_spin_squared(spin, n, &x).unwrap()).unwrap();
            prop_assert!(a.sub(&b).norm() < 1e-9);
        }
    }
}
