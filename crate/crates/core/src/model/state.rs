//! Complex state vectors over the product basis.
//!
//! Basis index of a configuration is `sum_k digit_k * d^k` with site 0
//! varying fastest and `digit = m + S`.

use std::io::{Read, Write};

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::spin::SpinValue;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub amplitudes: Vec<Complex64>,
    /// Total `2Sz` when every nonzero amplitude lies in one sector.
    pub twice_sz: Option<i64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        Self {
            amplitudes,
            twice_sz: None,
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.amplitudes[index] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Uniformly random complex amplitudes, normalized.
    pub fn random<R: Rng>(dim: usize, rng: &mut R) -> Self {
        let mut v = Self::new(
            (0..dim)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        );
        v.normalize();
        v
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Scales to unit norm; the zero vector is left untouched.
    pub fn normalize(&mut self) -> f64 {
        let n = self.norm();
        if n > 0.0 {
            self.amplitudes.iter_mut().for_each(|a| *a /= n);
        }
        n
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn axpy(&mut self, alpha: Complex64, other: &StateVector) {
        for (a, b) in self.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += alpha * b;
        }
    }

    pub fn scaled(&self, alpha: Complex64) -> StateVector {
        StateVector {
            amplitudes: self.amplitudes.iter().map(|a| a * alpha).collect(),
            twice_sz: self.twice_sz,
        }
    }

    pub fn sub(&self, other: &StateVector) -> StateVector {
        StateVector::new(
            self.amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// Multiply by a global phase so the largest-magnitude amplitude is real
    /// and positive.
    pub fn fix_phase(&mut self) {
        let Some(big) = self
            .amplitudes
            .iter()
            .copied()
            .max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()))
        else {
            return;
        };
        if big.norm() > 0.0 {
            let phase = big.conj() / big.norm();
            self.amplitudes.iter_mut().for_each(|a| *a *= phase);
        }
    }

    /// Kronecker product with `self` on the low (fast) sites.
    pub fn tensor(&self, high: &StateVector) -> StateVector {
        let mut out = Vec::with_capacity(self.dim() * high.dim());
        for h in &high.amplitudes {
            for l in &self.amplitudes {
                out.push(l * h);
            }
        }
        let twice_sz = match (self.twice_sz, high.twice_sz) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        StateVector {
            amplitudes: out,
            twice_sz,
        }
    }

    /// Checks that every amplitude above `tol` lies in sector `twice_sz`.
    pub fn lies_in_sector(&self, spin: SpinValue, n_sites: usize, twice_sz: i64, tol: f64) -> bool {
        self.amplitudes.iter().enumerate().all(|(idx, a)| {
            a.norm() <= tol || configuration_twice_sz(idx, spin, n_sites) == twice_sz
        })
    }

    /// Writes `u64` little-endian dimension followed by `(re, im)` f64 pairs.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&(self.dim() as u64).to_le_bytes())?;
        for a in &self.amplitudes {
            w.write_all(&a.re.to_le_bytes())?;
            w.write_all(&a.im.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let mut head = [0u8; 8];
        r.read_exact(&mut head)?;
        let dim = u64::from_le_bytes(head) as usize;
        let mut amplitudes = Vec::with_capacity(dim);
        let mut buf = [0u8; 16];
        for _ in 0..dim {
            r.read_exact(&mut buf)?;
            let re = f64::from_le_bytes(buf[..8].try_into().unwrap());
            let im = f64::from_le_bytes(buf[8..].try_into().unwrap());
            amplitudes.push(Complex64::new(re, im));
        }
        Ok(Self::new(amplitudes))
    }
}

/// Digit of `site` in basis index `index`.
#[inline]
pub fn digit(index: usize, site: usize, d: usize) -> usize {
    (index / d.pow(site as u32)) % d
}

pub fn digits(index: usize, d: usize, n_sites: usize) -> Vec<usize> {
    let mut rest = index;
    (0..n_sites)
        .map(|_| {
            let k = rest % d;
            rest /= d;
            k
        })
        .collect()
}

pub fn index_of(digits: &[usize], d: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &k| acc * d + k)
}

/// Total `2Sz` of a basis configuration.
pub fn configuration_twice_sz(index: usize, spin: SpinValue, n_sites: usize) -> i64 {
    let d = spin.dim();
    let digit_sum: usize = digits(index, d, n_sites).iter().sum();
    2 * digit_sum as i64 - spin.twice_s() as i64 * n_sites as i64
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn digits_round_trip() {
        let d = 3;
        for idx in 0..81 {
            assert_eq!(index_of(&digits(idx, d, 4), d), idx);
        }
        assert_eq!(digit(5, 0, 3), 2);
        assert_eq!(digit(5, 1, 3), 1);
    }

    #[test]
    fn binary_layout() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let v = StateVector::random(5, &mut rng);
        let mut bytes = Vec::new();
        v.write_binary(&mut bytes).unwrap();
        assert_eq!(bytes.len(), 8 + 5 * 16);
        assert_eq!(&bytes[..8], &5u64.to_le_bytes());
        assert_eq!(&bytes[8..16], &v.amplitudes[0].re.to_le_bytes());
        let back = StateVector::read_binary(bytes.as_slice()).unwrap();
        assert_eq!(back.amplitudes, v.amplitudes);
    }

    #[test]
    fn phase_fixing() {
        let mut v = StateVector::new(vec![
            Complex64::new(0.0, 0.1),
            Complex64::new(0.0, -0.9),
        ]);
        v.fix_phase();
        assert!((v.amplitudes[1] - Complex64::new(0.9, 0.0)).norm() < 1e-15);
        assert!((v.amplitudes[0] - Complex64::new(-0.1, 0.0)).norm() < 1e-15);
    }
}
