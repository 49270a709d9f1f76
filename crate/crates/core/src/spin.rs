//! Single-site spin-S algebra with exact half-integer bookkeeping.
//!
//! Local states are labelled by a digit `k = m + S` in `0..=2S`; every
//! matrix element is computed from the integer `2S` and `2m` so no
//! floating-point spin value ever enters index arithmetic.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Spin magnitude stored as the integer `2S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpinValue {
    twice_s: u32,
}

impl SpinValue {
    pub fn new(twice_s: u32) -> Result<Self> {
        if twice_s == 0 {
            return Err(Error::InvalidSpin(twice_s));
        }
        Ok(Self { twice_s })
    }

    pub fn half() -> Self {
        Self { twice_s: 1 }
    }

    pub fn one() -> Self {
        Self { twice_s: 2 }
    }

    pub fn twice_s(self) -> u32 {
        self.twice_s
    }

    pub fn s(self) -> f64 {
        self.twice_s as f64 / 2.0
    }

    /// Local Hilbert dimension `2S + 1`.
    pub fn dim(self) -> usize {
        self.twice_s as usize + 1
    }

    /// `S(S+1)`.
    pub fn casimir(self) -> f64 {
        let t = self.twice_s as f64;
        t * (t + 2.0) / 4.0
    }

    /// `S(S+1) / (3/4)`, the ratio that rescales spin-1/2 results.
    pub fn casimir_ratio(self) -> f64 {
        self.casimir() / 0.75
    }

    /// Twice the magnetic quantum number of local digit `k`.
    #[inline]
    pub fn twice_m(self, digit: usize) -> i64 {
        2 * digit as i64 - self.twice_s as i64
    }

    #[inline]
    pub fn m(self, digit: usize) -> f64 {
        self.twice_m(digit) as f64 / 2.0
    }

    /// `<k+1| S^+ |k>` = sqrt(S(S+1) - m(m+1)).
    #[inline]
    pub fn raise_element(self, digit: usize) -> f64 {
        let t = self.twice_s as i64;
        let tm = self.twice_m(digit);
        let num = t * (t + 2) - tm * (tm + 2);
        if num <= 0 {
            0.0
        } else {
            (num as f64).sqrt() / 2.0
        }
    }

    /// `<k-1| S^- |k>` = sqrt(S(S+1) - m(m-1)).
    #[inline]
    pub fn lower_element(self, digit: usize) -> f64 {
        let t = self.twice_s as i64;
        let tm = self.twice_m(digit);
        let num = t * (t + 2) - tm * (tm - 2);
        if num <= 0 {
            0.0
        } else {
            (num as f64).sqrt() / 2.0
        }
    }

    /// Dense `(S^x, S^y, S^z)` in the digit basis.
    pub fn matrices(self) -> [DMatrix<Complex64>; 3] {
        let d = self.dim();
        let mut sx = DMatrix::zeros(d, d);
        let mut sy = DMatrix::zeros(d, d);
        let mut sz = DMatrix::zeros(d, d);
        for k in 0..d {
            sz[(k, k)] = Complex64::new(self.m(k), 0.0);
            if k + 1 < d {
                let up = self.raise_element(k);
                // S^+ |k> = up |k+1>, S^- |k+1> = up |k>
                sx[(k + 1, k)] += Complex64::new(up / 2.0, 0.0);
                sx[(k, k + 1)] += Complex64::new(up / 2.0, 0.0);
                sy[(k + 1, k)] += Complex64::new(0.0, -up / 2.0);
                sy[(k, k + 1)] += Complex64::new(0.0, up / 2.0);
            }
        }
        [sx, sy, sz]
    }

    /// Amplitudes of the coherent state `exp(-i a S^y)|S,S>`, polarized along
    /// `(sin a, 0, cos a)`, in the digit basis.
    pub fn coherent_state(self, angle: f64) -> Vec<f64> {
        let t = self.twice_s as usize;
        let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
        (0..=t)
            .map(|k| {
                // <m|e^{-i a S_y}|S> with S+m = k, S-m = t-k
                binomial(t, k).sqrt() * c.powi(k as i32) * s.powi((t - k) as i32)
            })
            .collect()
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl fmt::Display for SpinValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_s % 2 == 0 {
            write!(f, "{}", self.twice_s / 2)
        } else {
            write!(f, "{}/2", self.twice_s)
        }
    }
}

impl FromStr for SpinValue {
    type Err = Error;

    /// Accepts `1/2`, `3/2`, `1`, `2`, or a decimal such as `1.5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse spin `{s}`"));
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            let den: u32 = den.trim().parse().map_err(|_| bad())?;
            return match den {
                1 => SpinValue::new(2 * num),
                2 => SpinValue::new(num),
                _ => Err(bad()),
            };
        }
        let v: f64 = s.parse().map_err(|_| bad())?;
        let twice = (2.0 * v).round();
        if (2.0 * v - twice).abs() > 1e-12 || twice < 1.0 {
            return Err(bad());
        }
        SpinValue::new(twice as u32)
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn display_parse_roundtrip(twice in 1u32..40) {
            let s = SpinValue::new(twice).unwrap();
            prop_assert_eq!(s.to_string().parse::<SpinValue>().unwrap(), s);
            prop_assert!((s.casimir() - s.s() * (s.s() + 1.0)).abs() < 1e-12);
        }
    }
}
