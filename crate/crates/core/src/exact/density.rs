//! Density matrices, partial traces, fidelity and Bures angle.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::state::{check_dim, StateVector};
use crate::spin::SpinValue;

pub const VALIDATION_TOL: f64 = 1e-12;
pub const NEGATIVITY_TOL: f64 = 1e-10;
/// Largest reduced matrix dimension `d^|sites|` built by partial trace.
pub const MATRIX_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    sites: Vec<usize>,
    local_dim: usize,
    matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates hermiticity, unit trace and positivity.
    pub fn new(sites: Vec<usize>, local_dim: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = local_dim.pow(sites.len() as u32);
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::InvalidDensityMatrix(format!(
                "expected {dim}x{dim}, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm = (&matrix - matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm > VALIDATION_TOL {
            return Err(Error::InvalidDensityMatrix(format!("not Hermitian ({herm:e})")));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > VALIDATION_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr}")));
        }
        let min = hermitian_eigenvalues(&matrix).into_iter().fold(f64::INFINITY, f64::min);
        if min < -NEGATIVITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self {
            sites,
            local_dim,
            matrix,
        })
    }

    /// `|psi><psi| / <psi|psi>` on `sites`, site order as in the state.
    pub fn from_pure(state: &StateVector, sites: Vec<usize>, local_dim: usize) -> Result<Self> {
        check_dim(local_dim.pow(sites.len() as u32), state.dim())?;
        let n = state.inner(state).re;
        let v = nalgebra::DVector::from_column_slice(&state.amplitudes);
        let m = &v * v.adjoint() / Complex64::new(n, 0.0);
        Self::new(sites, local_dim, hermitize(m))
    }

    pub fn maximally_mixed(sites: Vec<usize>, local_dim: usize) -> Self {
        let dim = local_dim.pow(sites.len() as u32);
        let m = DMatrix::identity(dim, dim) / Complex64::new(dim as f64, 0.0);
        Self {
            sites,
            local_dim,
            matrix: m,
        }
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// Traces out every site not in `keep`; `keep` fixes the new site order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let pos: Vec<usize> = keep
            .iter()
            .map(|s| {
                self.sites.iter().position(|x| x == s).ok_or(Error::IndexOutOfRange {
                    index: *s,
                    limit: self.sites.len(),
                })
            })
            .collect::<Result<_>>()?;
        let d = self.local_dim;
        let k = self.sites.len();
        let rest: Vec<usize> = (0..k).filter(|p| !pos.contains(p)).collect();
        let dk = d.pow(pos.len() as u32);
        let dr = d.pow(rest.len() as u32);
        let compose = |a: usize, r: usize| {
            let mut idx = vec![0usize; k];
            let (mut a, mut r) = (a, r);
            for &p in &pos {
                idx[p] = a % d;
                a /= d;
            }
            for &p in &rest {
                idx[p] = r % d;
                r /= d;
            }
            idx.iter().rev().fold(0, |acc, &x| acc * d + x)
        };
        let mut out = DMatrix::zeros(dk, dk);
        for a in 0..dk {
            for b in 0..dk {
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..dr {
                    acc += self.matrix[(compose(a, r), compose(b, r))];
                }
                out[(a, b)] = acc;
            }
        }
        Ok(DensityMatrix {
            sites: keep.to_vec(),
            local_dim: d,
            matrix: out,
        })
    }
}

fn hermitize(m: DMatrix<Complex64>) -> DMatrix<Complex64> {
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    SymmetricEigen::new(hermitize(m.clone()))
        .eigenvalues
        .iter()
        .copied()
        .collect()
}

/// Square root of a positive semidefinite Hermitian matrix. Eigenvalues at
/// or below the roundoff floor `d * eps * max|l|` are clamped to zero.
pub fn psd_sqrt(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(hermitize(m.clone()));
    let v = &eig.eigenvectors;
    let top = eig.eigenvalues.iter().fold(0.0f64, |a, l| a.max(l.abs()));
    let floor = m.nrows() as f64 * f64::EPSILON * top;
    let mut scaled = v.clone();
    for (j, &l) in eig.eigenvalues.iter().enumerate() {
        let s = Complex64::new(if l > floor { l.sqrt() } else { 0.0 }, 0.0);
        scaled.column_mut(j).iter_mut().for_each(|z| *z *= s);
    }
    scaled * v.adjoint()
}

/// Reduced state of `sites` (distinct, first entry on the fastest digit).
pub fn reduced_density_matrix(
    state: &StateVector,
    spin: SpinValue,
    n_sites: usize,
    sites: &[usize],
) -> Result<DensityMatrix> {
    let d = spin.dim();
    check_dim(d.pow(n_sites as u32), state.dim())?;
    for (i, &s) in sites.iter().enumerate() {
        if s >= n_sites {
            return Err(Error::IndexOutOfRange {
                index: s,
                limit: n_sites,
            });
        }
        if sites[..i].contains(&s) {
            return Err(Error::Unsupported(format!("site {s} listed twice")));
        }
    }
    let da = d.checked_pow(sites.len() as u32).filter(|&x| x <= MATRIX_CAP).ok_or(
        Error::SizeCap {
            dim: (d as u128).pow(sites.len() as u32),
            cap: MATRIX_CAP as u128,
        },
    )?;
    let rest: Vec<usize> = (0..n_sites).filter(|s| !sites.contains(s)).collect();
    let dr = d.pow(rest.len() as u32);
    let pw: Vec<usize> = (0..n_sites).map(|k| d.pow(k as u32)).collect();
    let mut m = DMatrix::<Complex64>::zeros(da, dr);
    for (c, amp) in state.amplitudes.iter().enumerate() {
        let a = sites
            .iter()
            .rev()
            .fold(0, |acc, &s| acc * d + (c / pw[s]) % d);
        let r = rest
            .iter()
            .rev()
            .fold(0, |acc, &s| acc * d + (c / pw[s]) % d);
        m[(a, r)] = *amp;
    }
    let norm = state.inner(state).re;
    let rho = &m * m.adjoint() / Complex64::new(norm, 0.0);
    DensityMatrix::new(sites.to_vec(), d, hermitize(rho))
}

/// `Tr sqrt(sqrt(rho) sigma sqrt(rho))`, evaluated as the trace norm of
/// `sqrt(rho) sqrt(sigma)` and clamped into `[0, 1]`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    let product = psd_sqrt(&rho.matrix) * psd_sqrt(&sigma.matrix);
    let f: f64 = product.singular_values().iter().sum();
    Ok(f.clamp(0.0, 1.0))
}

pub fn bures_angle(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(fidelity(rho, sigma)?.acos())
}

/// `|<a|b>| / (|a| |b|)`.
pub fn pure_fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    check_dim(a.dim(), b.dim())?;
    Ok((a.inner(b).norm() / (a.norm() * b.norm())).min(1.0))
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::SpinValue;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn fidelity_bounds_symmetry_and_monotonicity(seed in any::<u64>(), twice in 1u32..=2, a in 0usize..3, b in 0usize..3) {
            prop_assume!(a != b);
            let spin = SpinValue::new(twice).unwrap();
            let dim = spin.dim().pow(3);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = StateVector::random(dim, &mut rng);
            let y = StateVector::random(dim, &mut rng);
            let rx = reduced_density_matrix(&x, spin, 3, &[a, b]).unwrap();
            let ry = reduced_density_matrix(&y, spin, 3, &[a, b]).unwrap();
            let f = fidelity(&rx, &ry).unwrap();
            prop_assert!((-1e-12..=1.0 + 1e-10).contains(&f));
            prop_assert!((f - fidelity(&ry, &rx).unwrap()).abs() < 1e-9);
            prop_assert!((fidelity(&rx, &rx).unwrap() - 1.0).abs() < 1e-8);
            prop_assert!(f + 1e-10 >= pure_fidelity(&x, &y).unwrap());
        }
    }
}
