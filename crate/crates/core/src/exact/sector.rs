//! Fixed-`Sz` subspaces and the real sparse Hamiltonian restricted to them.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::ladder::LadderSpec;
use crate::model::state::StateVector;
use crate::spin::SpinValue;

/// Configurations with total `2Sz = twice_sz`, stored as sorted full-basis
/// indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorBasis {
    spin: SpinValue,
    n_sites: usize,
    twice_sz: i64,
    configs: Vec<usize>,
}

impl SectorBasis {
    pub fn new(spin: SpinValue, n_sites: usize, twice_sz: i64) -> Result<Self> {
        let t = spin.twice_s() as i64;
        let shifted = twice_sz + t * n_sites as i64;
        if shifted < 0 || shifted % 2 != 0 || shifted > 2 * t * n_sites as i64 {
            return Err(Error::EmptySector(twice_sz));
        }
        let digit_sum = (shifted / 2) as usize;
        let d = spin.dim();
        let mut configs = Vec::new();
        // most significant site first so that indices come out sorted
        fn fill(
            site: usize,
            remaining: usize,
            prefix: usize,
            d: usize,
            configs: &mut Vec<usize>,
        ) {
            if site == 0 {
                if remaining < d {
                    configs.push(prefix * d + remaining);
                }
                return;
            }
            let max_rest = (d - 1) * site;
            for k in 0..d.min(remaining + 1) {
                if remaining - k <= max_rest {
                    fill(site - 1, remaining - k, prefix * d + k, d, configs);
                }
            }
        }
        fill(n_sites - 1, digit_sum, 0, d, &mut configs);
        if configs.is_empty() {
            return Err(Error::EmptySector(twice_sz));
        }
        Ok(Self {
            spin,
            n_sites,
            twice_sz,
            configs,
        })
    }

    pub fn for_spec(spec: &LadderSpec, twice_sz: i64) -> Result<Self> {
        Self::new(spec.spin(), spec.n_sites(), twice_sz)
    }

    pub fn dim(&self) -> usize {
        self.configs.len()
    }

    pub fn twice_sz(&self) -> i64 {
        self.twice_sz
    }

    pub fn spin(&self) -> SpinValue {
        self.spin
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn config(&self, pos: usize) -> usize {
        self.configs[pos]
    }

    pub fn configs(&self) -> &[usize] {
        &self.configs
    }

    pub fn position(&self, config: usize) -> Option<usize> {
        self.configs.binary_search(&config).ok()
    }

    /// Lifts a sector vector to the full product basis.
    pub fn embed(&self, values: &[f64]) -> Result<StateVector> {
        if values.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: values.len(),
            });
        }
        let full = self.spin.dim().pow(self.n_sites as u32);
        let mut amps = vec![Complex64::new(0.0, 0.0); full];
        for (pos, &c) in self.configs.iter().enumerate() {
            amps[c] = Complex64::new(values[pos], 0.0);
        }
        Ok(StateVector {
            amplitudes: amps,
            twice_sz: Some(self.twice_sz),
        })
    }

    /// Sector components of a full-basis state.
    pub fn restrict(&self, state: &StateVector) -> Vec<Complex64> {
        self.configs.iter().map(|&c| state.amplitudes[c]).collect()
    }
}

/// Real symmetric matrix in compressed-row form.
#[derive(Debug, Clone)]
pub struct SparseSymmetric {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseSymmetric {
    pub fn from_rows(rows: Vec<Vec<(usize, f64)>>) -> Self {
        let dim = rows.len();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let nnz: usize = rows.iter().map(Vec::len).sum();
        let mut cols = Vec::with_capacity(nnz);
        let mut vals = Vec::with_capacity(nnz);
        row_ptr.push(0);
        for row in rows {
            for (c, v) in row {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        Self {
            dim,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        y.par_iter_mut().enumerate().for_each(|(r, out)| {
            let mut acc = 0.0;
            for p in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[p] * x[self.cols[p]];
            }
            *out = acc;
        });
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut m = nalgebra::DMatrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for p in self.row_ptr[r]..self.row_ptr[r + 1] {
                m[(r, self.cols[p])] += self.vals[p];
            }
        }
        m
    }
}

/// Hamiltonian restricted to `basis`. In the `Sz` product basis every matrix
/// element is real.
pub fn sector_hamiltonian(spec: &LadderSpec, basis: &SectorBasis) -> Result<SparseSymmetric> {
    if basis.spin() != spec.spin() || basis.n_sites() != spec.n_sites() {
        return Err(Error::Unsupported(
            "sector basis does not belong to this spec".into(),
        ));
    }
    let spin = spec.spin();
    let d = spin.dim();
    let pw: Vec<usize> = (0..spec.n_sites()).map(|k| d.pow(k as u32)).collect();
    let bonds = spec.bonds();
    let rows: Vec<Vec<(usize, f64)>> = (0..basis.dim())
        .into_par_iter()
        .map(|row| {
            let c = basis.config(row);
            let mut diag = 0.0;
            let mut entries = Vec::new();
            for bond in &bonds {
                let (pa, pb) = (pw[bond.a], pw[bond.b]);
                let ka = (c / pa) % d;
                let kb = (c / pb) % d;
                diag += bond.coupling * (spin.twice_m(ka) * spin.twice_m(kb)) as f64 / 4.0;
                if ka >= 1 && kb + 1 < d {
                    let src = c - pa + pb;
                    let el = spin.raise_element(ka - 1) * spin.lower_element(kb + 1);
                    if let Some(col) = basis.position(src) {
                        entries.push((col, 0.5 * bond.coupling * el));
                    }
                }
                if kb >= 1 && ka + 1 < d {
                    let src = c + pa - pb;
                    let el = spin.lower_element(ka + 1) * spin.raise_element(kb - 1);
                    if let Some(col) = basis.position(src) {
                        entries.push((col, 0.5 * bond.coupling * el));
                    }
                }
            }
            entries.push((row, diag));
            entries.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, f64)> = Vec::with_capacity(entries.len());
            for (col, v) in entries {
                match merged.last_mut() {
                    Some(last) if last.0 == col => last.1 += v,
                    _ => merged.push((col, v)),
                }
            }
            merged
        })
        .collect();
    Ok(SparseSymmetric::from_rows(rows))
}

/// Non-negative `2Sz` values of a lattice, smallest first.
pub fn nonnegative_sectors(spin: SpinValue, n_sites: usize) -> Vec<i64> {
    let max = spin.twice_s() as i64 * n_sites as i64;
    let start = max % 2;
    (start..=max).step_by(2).collect()
}
