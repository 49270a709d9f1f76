//! Lowest eigenpairs of real symmetric sector Hamiltonians.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sector::SparseSymmetric;
use crate::error::Result;
use crate::registry::{Named, Registry};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct EigenOptions {
    pub n_levels: usize,
    pub max_restarts: usize,
    pub krylov_dim: usize,
    /// Residual `||H x - E x||` required for each returned pair.
    pub tol: f64,
    pub seed: u64,
    /// `auto` switches to the dense solver at or below this dimension.
    pub dense_threshold: usize,
    /// Relative tolerance (times `|E0|`) for grouping degenerate levels.
    pub degeneracy_tol: f64,
    pub want_vectors: bool,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            n_levels: 1,
            max_restarts: 300,
            krylov_dim: 160,
            tol: 1e-10,
            seed: 0x5eed,
            dense_threshold: 400,
            degeneracy_tol: 1e-8,
            want_vectors: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub energies: Vec<f64>,
    #[serde(skip)]
    pub states: Option<Vec<Vec<f64>>>,
    pub residuals: Vec<f64>,
    pub converged: bool,
    pub degeneracy_groups: Vec<Vec<usize>>,
}

impl SpectrumResult {
    fn assemble(mut pairs: Vec<(f64, Vec<f64>, f64)>, converged: bool, opts: &EigenOptions) -> Self {
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let energies: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let residuals = pairs.iter().map(|p| p.2).collect();
        let degeneracy_groups = group_degeneracies(&energies, opts.degeneracy_tol);
        let states = opts
            .want_vectors
            .then(|| pairs.into_iter().map(|p| p.1).collect());
        Self {
            energies,
            states,
            residuals,
            converged,
            degeneracy_groups,
        }
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    pub fn ground_degeneracy(&self) -> usize {
        self.degeneracy_groups.first().map_or(0, Vec::len)
    }
}

/// Clusters sorted energies whose consecutive gaps are at most
/// `rel_tol * |E0|` (absolute `rel_tol` when `E0 = 0`).
pub fn group_degeneracies(energies: &[f64], rel_tol: f64) -> Vec<Vec<usize>> {
    let Some(&e0) = energies.first() else {
        return Vec::new();
    };
    let tol = if e0 == 0.0 { rel_tol } else { rel_tol * e0.abs() };
    let mut groups: Vec<Vec<usize>> = vec![vec![0]];
    for i in 1..energies.len() {
        if energies[i] - energies[i - 1] <= tol {
            groups.last_mut().unwrap().push(i);
        } else {
            groups.push(vec![i]);
        }
    }
    groups
}

pub trait EigenSolver: Named + Send + Sync {
    fn solve(&self, h: &SparseSymmetric, opts: &EigenOptions) -> Result<SpectrumResult>;
}

pub struct DenseSolver;
pub struct LanczosSolver;
pub struct AutoSolver;

impl Named for DenseSolver {
    fn name(&self) -> &'static str {
        "dense"
    }
}

impl Named for LanczosSolver {
    fn name(&self) -> &'static str {
        "lanczos"
    }
}

impl Named for AutoSolver {
    fn name(&self) -> &'static str {
        "auto"
    }
}

impl EigenSolver for DenseSolver {
    fn solve(&self, h: &SparseSymmetric, opts: &EigenOptions) -> Result<SpectrumResult> {
        let eig = SymmetricEigen::new(h.to_dense());
        let mut order: Vec<usize> = (0..h.dim()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let pairs = order
            .into_iter()
            .take(opts.n_levels.min(h.dim()))
            .map(|i| {
                let mut v: Vec<f64> = eig.eigenvectors.column(i).iter().copied().collect();
                normalize(&mut v);
                fix_sign(&mut v);
                let e = eig.eigenvalues[i];
                let r = residual(h, e, &v);
                (e, v, r)
            })
            .collect::<Vec<_>>();
        let converged = pairs.iter().all(|p| p.2 < opts.tol);
        Ok(SpectrumResult::assemble(pairs, converged, opts))
    }
}

impl EigenSolver for LanczosSolver {
    fn solve(&self, h: &SparseSymmetric, opts: &EigenOptions) -> Result<SpectrumResult> {
        let n = h.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut locked: Vec<Vec<f64>> = Vec::new();
        let mut pairs = Vec::new();
        let mut converged = true;
        for _ in 0..opts.n_levels.min(n) {
            let start: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let (e, mut v, r, ok) = lowest_in_complement(h, &locked, start, opts, &mut rng);
            converged &= ok;
            fix_sign(&mut v);
            locked.push(v.clone());
            pairs.push((e, v, r));
        }
        Ok(SpectrumResult::assemble(pairs, converged, opts))
    }
}

impl EigenSolver for AutoSolver {
    fn solve(&self, h: &SparseSymmetric, opts: &EigenOptions) -> Result<SpectrumResult> {
        if h.dim() <= opts.dense_threshold {
            DenseSolver.solve(h, opts)
        } else {
            LanczosSolver.solve(h, opts)
        }
    }
}

pub fn eigen_solvers() -> Registry<dyn EigenSolver> {
    Registry::<dyn EigenSolver>::new("eigensolver")
        .with(Box::new(DenseSolver))
        .with(Box::new(LanczosSolver))
        .with(Box::new(AutoSolver))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = dot(v, v).sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

fn fix_sign(v: &mut [f64]) {
    let big = v
        .iter()
        .copied()
        .max_by(|a, b| a.abs().total_cmp(&b.abs()))
        .unwrap_or(0.0);
    if big < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn project_out(w: &mut [f64], basis: &[Vec<f64>]) {
    for q in basis {
        let c = dot(q, w);
        w.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
    }
}

fn residual(h: &SparseSymmetric, e: f64, v: &[f64]) -> f64 {
    let mut hv = vec![0.0; v.len()];
    h.matvec(v, &mut hv);
    hv.iter()
        .zip(v)
        .map(|(a, b)| (a - e * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Restarted Lanczos with full reorthogonalization for the lowest eigenpair
/// of `h` on the orthogonal complement of `locked`.
fn lowest_in_complement(
    h: &SparseSymmetric,
    locked: &[Vec<f64>],
    start: Vec<f64>,
    opts: &EigenOptions,
    rng: &mut ChaCha8Rng,
) -> (f64, Vec<f64>, f64, bool) {
    let n = h.dim();
    let m_max = opts.krylov_dim.max(2).min(n - locked.len());
    let mut v = start;
    let mut best = (f64::INFINITY, Vec::new(), f64::INFINITY);
    for _ in 0..opts.max_restarts.max(1) {
        project_out(&mut v, locked);
        project_out(&mut v, locked);
        if normalize(&mut v) < 1e-300 {
            v = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            continue;
        }
        let mut q: Vec<Vec<f64>> = vec![v.clone()];
        let mut alpha = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut w = vec![0.0; n];
        for j in 0..m_max {
            h.matvec(&q[j], &mut w);
            let a = dot(&q[j], &w);
            alpha.push(a);
            for _ in 0..2 {
                project_out(&mut w, &q);
                project_out(&mut w, locked);
            }
            let b = dot(&w, &w).sqrt();
            if j + 1 == m_max || b <= 1e-12 * a.abs().max(1.0) {
                break;
            }
            beta.push(b);
            q.push(w.iter().map(|x| x / b).collect());
        }
        let m = alpha.len();
        let mut t = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            t[(i, i)] = alpha[i];
            if i + 1 < m {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (imin, theta) = eig
            .eigenvalues
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let y = eig.eigenvectors.column(imin);
        let mut x = vec![0.0; n];
        for (k, qk) in q.iter().take(m).enumerate() {
            let c = y[k];
            x.iter_mut().zip(qk).for_each(|(a, b)| *a += c * b);
        }
        project_out(&mut x, locked);
        normalize(&mut x);
        let r = residual(h, theta, &x);
        if r < best.2 {
            best = (theta, x.clone(), r);
        }
        if r < opts.tol {
            return (theta, x, r, true);
        }
        v = x;
    }
    let (e, x, r) = best;
    (e, x, r, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_laplacian(n: usize) -> SparseSymmetric {
        let rows = (0..n)
            .map(|i| {
                let mut r = Vec::new();
                if i > 0 {
                    r.push((i - 1, -1.0));
                }
                r.push((i, 2.0));
                if i + 1 < n {
                    r.push((i + 1, -1.0));
                }
                r
            })
            .collect();
        SparseSymmetric::from_rows(rows)
    }

    #[test]
    fn lanczos_matches_closed_form_spectrum() {
        let n = 600;
        let h = path_laplacian(n);
        let opts = EigenOptions {
            n_levels: 3,
            ..Default::default()
        };
        let res = LanczosSolver.solve(&h, &opts).unwrap();
        assert!(res.converged);
        for (k, e) in res.energies.iter().enumerate() {
            let x = std::f64::consts::PI * (k + 1) as f64 / (n + 1) as f64;
            assert!((e - (2.0 - 2.0 * x.cos())).abs() < 1e-10);
        }
    }

    #[test]
    fn lanczos_resolves_degenerate_levels() {
        // two disjoint copies of the same path
        let n = 250;
        let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
        for copy in 0..2 {
            for i in 0..n {
                let o = copy * n;
                let mut r = Vec::new();
                if i > 0 {
                    r.push((o + i - 1, -1.0));
                }
                r.push((o + i, 2.0));
                if i + 1 < n {
                    r.push((o + i + 1, -1.0));
                }
                rows.push(r);
            }
        }
        let h = SparseSymmetric::from_rows(rows);
        let opts = EigenOptions {
            n_levels: 3,
            degeneracy_tol: 1e-6,
            ..Default::default()
        };
        let res = LanczosSolver.solve(&h, &opts).unwrap();
        assert_eq!(res.degeneracy_groups[0], vec![0, 1]);
        let dense = DenseSolver.solve(&h, &opts).unwrap();
        for (a, b) in res.energies.iter().zip(&dense.energies) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn grouping() {
        let g = group_degeneracies(&[-3.0, -3.0 + 1e-9, -2.0, -2.0, -2.0, 1.0], 1e-8);
        assert_eq!(g, vec![vec![0, 1], vec![2, 3, 4], vec![5]]);
    }

    #[test]
    fn registry_names() {
        assert_eq!(eigen_solvers().names(), vec!["auto", "dense", "lanczos"]);
    }
}
