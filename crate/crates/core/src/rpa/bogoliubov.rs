//! Normal-mode frequencies of quadratic bosonic forms
//! `(1/2) (z^dag, z) H (z, z^dag)^T` with metric `M = diag(1, -1)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::exact::density::psd_sqrt;

/// Result of a symplectic diagonalization: the `n` positive frequencies,
/// sorted, plus the largest imaginary part met along the way.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalModes {
    pub frequencies: Vec<f64>,
    pub max_imaginary: f64,
}

fn metric(n: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::identity(2 * n, 2 * n);
    for i in n..2 * n {
        m[(i, i)] = Complex64::new(-1.0, 0.0);
    }
    m
}

/// Frequencies `|eig(M H)|` of a `2n x 2n` Hermitian `H`. A positive
/// semidefinite `H` goes through the Hermitian matrix `H^{1/2} M H^{1/2}`;
/// otherwise the general eigenproblem of `M H` is solved.
pub fn normal_modes(h: &DMatrix<Complex64>) -> NormalModes {
    let n = h.nrows() / 2;
    let m = metric(n);
    let herm = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let min = nalgebra::SymmetricEigen::new(herm.clone())
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let scale = herm.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    let (mut values, max_imaginary): (Vec<f64>, f64) = if min >= -1e-12 * scale {
        let r = psd_sqrt(&herm);
        let k = &r * &m * &r;
        let ev = nalgebra::SymmetricEigen::new((&k + k.adjoint()) * Complex64::new(0.5, 0.0)).eigenvalues;
        (ev.iter().map(|x| x.abs()).collect(), 0.0)
    } else {
        let ev = (&m * &herm).eigenvalues_general();
        let im = ev.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        (ev.iter().map(|z| z.norm()).collect(), im)
    };
    values.sort_by(f64::total_cmp);
    // eigenvalues of M H come in +-w pairs
    let frequencies = values.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect();
    NormalModes {
        frequencies,
        max_imaginary,
    }
}

trait GeneralEigen {
    fn eigenvalues_general(&self) -> Vec<Complex64>;
}

impl GeneralEigen for DMatrix<Complex64> {
    fn eigenvalues_general(&self) -> Vec<Complex64> {
        let schur = nalgebra::linalg::Schur::new(self.clone());
        let t = schur.unpack().1;
        (0..t.nrows()).map(|i| t[(i, i)]).collect()
    }
}

/// `H = [[A, B], [B, A]]` for real symmetric `A`, `B`.
pub fn block_form(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    let mut h = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] = Complex64::new(a[(i, j)], 0.0);
            h[(i + n, j + n)] = Complex64::new(a[(i, j)], 0.0);
            h[(i, j + n)] = Complex64::new(b[(i, j)], 0.0);
            h[(i + n, j)] = Complex64::new(b[(i, j)], 0.0);
        }
    }
    h
}
