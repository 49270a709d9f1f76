//! Reference implementations used only by the integration tests. They
//! rebuild the physics from scratch with dense Kronecker products and share
//! no code with the library.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

/// `(Sz, S+, S-)` for spin `twice_s / 2` in the basis `m = -S..=S`.
pub fn spin_ops(twice_s: u32) -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
    let d = twice_s as usize + 1;
    let s = twice_s as f64 / 2.0;
    let mut sz = DMatrix::zeros(d, d);
    let mut sp = DMatrix::zeros(d, d);
    for k in 0..d {
        let m = k as f64 - s;
        sz[(k, k)] = m;
        if k + 1 < d {
            sp[(k + 1, k)] = (s * (s + 1.0) - m * (m + 1.0)).sqrt();
        }
    }
    let sm = sp.transpose();
    (sz, sp, sm)
}

/// `op` on `site` of `n` sites, site 0 being the fastest index.
pub fn embed(op: &DMatrix<f64>, site: usize, n: usize, d: usize) -> DMatrix<f64> {
    let left = DMatrix::<f64>::identity(d.pow((n - 1 - site) as u32), d.pow((n - 1 - site) as u32));
    let right = DMatrix::<f64>::identity(d.pow(site as u32), d.pow(site as u32));
    left.kronecker(op).kronecker(&right)
}

/// Bonds `(i, j, coupling)` of a zig-zag ladder with per-rung arrays.
pub fn bonds(j: &[f64], jp: &[f64], j2: &[f64], j2p: &[f64], periodic: bool) -> Vec<(usize, usize, f64)> {
    let n = j.len();
    let sites = 2 * n;
    let mut out = Vec::new();
    let mut push = |a: usize, b: usize, c: f64| {
        if periodic {
            out.push((a % sites, b % sites, c));
        } else if b < sites {
            out.push((a, b, c));
        }
    };
    for r in 0..n {
        push(2 * r, 2 * r + 1, j[r]);
        push(2 * r + 1, 2 * r + 2, jp[r]);
        push(2 * r + 1, 2 * r + 3, j2[r]);
        push(2 * r, 2 * r + 2, j2p[r]);
    }
    out
}

pub fn dense_hamiltonian(twice_s: u32, n_sites: usize, bonds: &[(usize, usize, f64)]) -> DMatrix<f64> {
    let d = twice_s as usize + 1;
    let (sz, sp, sm) = spin_ops(twice_s);
    let z: Vec<_> = (0..n_sites).map(|i| embed(&sz, i, n_sites, d)).collect();
    let p: Vec<_> = (0..n_sites).map(|i| embed(&sp, i, n_sites, d)).collect();
    let m: Vec<_> = (0..n_sites).map(|i| embed(&sm, i, n_sites, d)).collect();
    let dim = d.pow(n_sites as u32);
    let mut h = DMatrix::zeros(dim, dim);
    for &(a, b, c) in bonds {
        if c == 0.0 {
            continue;
        }
        h += (&z[a] * &z[b] + 0.5 * (&p[a] * &m[b] + &m[a] * &p[b])) * c;
    }
    h
}

/// Rung singlet amplitudes: `(-1)^(S - m1) / sqrt(2S+1)` on `m1 + m2 = 0`,
/// with the first site fastest.
pub fn singlet(twice_s: u32) -> DVector<f64> {
    let d = twice_s as usize + 1;
    let mut v = DVector::zeros(d * d);
    for k in 0..d {
        let partner = d - 1 - k;
        let sign = if (d - 1 - k) % 2 == 0 { 1.0 } else { -1.0 };
        v[k + d * partner] = sign / (d as f64).sqrt();
    }
    v
}

/// Product of rung singlets, rung 0 on the fastest sites.
pub fn dimer(twice_s: u32, n_rungs: usize) -> DVector<f64> {
    let s = singlet(twice_s);
    let mut out = s.clone();
    for _ in 1..n_rungs {
        out = s.kronecker(&out);
    }
    out
}

/// Spin coherent state along `(sin a, 0, cos a)`.
pub fn coherent(twice_s: u32, a: f64) -> DVector<f64> {
    let (_, sp, sm) = spin_ops(twice_s);
    let sy_i = (&sp - &sm) * 0.5; // i S_y
    let d = twice_s as usize + 1;
    let mut top = DVector::zeros(d);
    top[d - 1] = 1.0;
    // exp(-i a S_y) = exp(-a (i S_y)) by a scaled Taylor series
    let gen = sy_i * (-a);
    let mut term = top.clone();
    let mut sum = top;
    for k in 1..80 {
        term = &gen * term / k as f64;
        sum += &term;
    }
    sum
}

/// `min over theta of K cos(theta) - |J + J' e^{i theta}|`, the classical
/// energy per rung in units of `S^2` after eliminating the rung angle.
pub fn reduced_classical_energy(j: f64, jp: f64, k: f64, theta: f64) -> f64 {
    k * theta.cos() - (j * j + jp * jp + 2.0 * j * jp * theta.cos()).sqrt()
}

pub fn classical_energy(j: f64, jp: f64, k: f64, theta: f64, phi: f64) -> f64 {
    j * phi.cos() + jp * (theta - phi).cos() + k * theta.cos()
}

/// Golden-section minimum of `f` on `[a, b]`.
pub fn golden(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    while (b - a).abs() > tol {
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}
