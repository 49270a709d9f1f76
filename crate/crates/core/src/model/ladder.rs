//! Ladder geometry, coupling patterns and their JSON form.
//!
//! Sites are numbered `0..2N`; rung `r` holds sites `(2r, 2r+1)`. For rung
//! `r` the four bond families are
//!
//! * `J`   : `2r   - 2r+1` (the rung itself)
//! * `Jp`  : `2r+1 - 2r+2` (zig-zag diagonal)
//! * `J2`  : `2r+1 - 2r+3` (leg of the second sublattice)
//! * `J2p` : `2r   - 2r+2` (leg of the first sublattice)
//!
//! With open boundaries every bond leaving the last rung is dropped.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spin::SpinValue;

pub const DEFAULT_SIZE_CAP: u128 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    Open,
}

/// Per-rung coupling arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingPattern {
    #[serde(rename = "J")]
    pub j: Vec<f64>,
    #[serde(rename = "Jp")]
    pub jp: Vec<f64>,
    #[serde(rename = "J2")]
    pub j2: Vec<f64>,
    #[serde(rename = "J2p")]
    pub j2p: Vec<f64>,
}

impl CouplingPattern {
    pub fn uniform(n_rungs: usize, c: UniformCouplings) -> Self {
        Self {
            j: vec![c.j; n_rungs],
            jp: vec![c.jp; n_rungs],
            j2: vec![c.j2; n_rungs],
            j2p: vec![c.j2p; n_rungs],
        }
    }

    pub fn len(&self) -> usize {
        self.j.len()
    }

    pub fn is_empty(&self) -> bool {
        self.j.is_empty()
    }

    fn arrays(&self) -> [(&'static str, &[f64]); 4] {
        [
            ("J", &self.j),
            ("Jp", &self.jp),
            ("J2", &self.j2),
            ("J2p", &self.j2p),
        ]
    }

    /// Returns the shared values when every array is constant.
    pub fn as_uniform(&self) -> Option<UniformCouplings> {
        let first = |v: &[f64]| v.first().copied();
        let constant = |v: &[f64]| v.iter().all(|&x| x == v[0]);
        if self.is_empty() || !self.arrays().iter().all(|(_, v)| constant(v)) {
            return None;
        }
        Some(UniformCouplings {
            j: first(&self.j)?,
            jp: first(&self.jp)?,
            j2: first(&self.j2)?,
            j2p: first(&self.j2p)?,
        })
    }
}

/// Site-independent couplings `(J, J', J2, J2')`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformCouplings {
    pub j: f64,
    pub jp: f64,
    pub j2: f64,
    pub j2p: f64,
}

impl UniformCouplings {
    /// Uniform ladder with `J2 = J2'`.
    pub fn symmetric(j: f64, jp: f64, j2: f64) -> Self {
        Self { j, jp, j2, j2p: j2 }
    }

    /// Point on the dimerizing line `J' = 2 J2 = 2 J2'`.
    pub fn dimer_line(j: f64, jp: f64) -> Self {
        Self::symmetric(j, jp, jp / 2.0)
    }

    pub fn require_symmetric_legs(&self) -> Result<()> {
        if (self.j2 - self.j2p).abs() > 1e-12 {
            return Err(Error::Unsupported(format!(
                "expected J2 = J2' (got {} and {})",
                self.j2, self.j2p
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BondKind {
    Rung,
    Diagonal,
    LegSecond,
    LegFirst,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    pub coupling: f64,
    pub kind: BondKind,
    pub rung: usize,
}

/// Validated ladder description.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderSpec {
    n_rungs: usize,
    spin: SpinValue,
    couplings: CouplingPattern,
    boundary: Boundary,
    uniform: Option<UniformCouplings>,
}

impl LadderSpec {
    pub fn n_rungs(&self) -> usize {
        self.n_rungs
    }

    pub fn n_sites(&self) -> usize {
        2 * self.n_rungs
    }

    pub fn spin(&self) -> SpinValue {
        self.spin
    }

    pub fn couplings(&self) -> &CouplingPattern {
        &self.couplings
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn uniform(&self) -> Option<UniformCouplings> {
        self.uniform
    }

    pub fn require_uniform(&self) -> Result<UniformCouplings> {
        self.uniform
            .ok_or_else(|| Error::Unsupported("operation requires uniform couplings".into()))
    }

    /// `(2S+1)^(2N)`.
    pub fn dimension(&self) -> usize {
        self.spin.dim().pow(self.n_sites() as u32)
    }

    /// All bonds with nonzero coupling, in rung order.
    pub fn bonds(&self) -> Vec<Bond> {
        let n = self.n_rungs;
        let l = self.n_sites();
        let mut out = Vec::with_capacity(4 * n);
        for r in 0..n {
            let wraps = r + 1 == n;
            let mut push = |a: usize, b: usize, coupling: f64, kind: BondKind, crosses: bool| {
                if coupling == 0.0 || (crosses && self.boundary == Boundary::Open) {
                    return;
                }
                out.push(Bond {
                    a: a % l,
                    b: b % l,
                    coupling,
                    kind,
                    rung: r,
                });
            };
            let c = &self.couplings;
            push(2 * r, 2 * r + 1, c.j[r], BondKind::Rung, false);
            push(2 * r + 1, 2 * r + 2, c.jp[r], BondKind::Diagonal, wraps);
            push(2 * r + 1, 2 * r + 3, c.j2[r], BondKind::LegSecond, wraps);
            push(2 * r, 2 * r + 2, c.j2p[r], BondKind::LegFirst, wraps);
        }
        out
    }

    pub fn to_file(&self) -> LadderSpecFile {
        LadderSpecFile {
            n_rungs: self.n_rungs,
            twice_s: self.spin.twice_s(),
            boundary: self.boundary,
            couplings: self.couplings.clone(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: LadderSpecFile = serde_json::from_str(text)?;
        file.into_spec()
    }
}

/// On-disk JSON layout of a ladder spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderSpecFile {
    pub n_rungs: usize,
    pub twice_s: u32,
    pub boundary: Boundary,
    pub couplings: CouplingPattern,
}

impl LadderSpecFile {
    pub fn into_spec(self) -> Result<LadderSpec> {
        build_spec(
            self.n_rungs,
            SpinValue::new(self.twice_s)?,
            self.couplings,
            self.boundary,
        )
    }
}

pub fn build_spec(
    n_rungs: usize,
    spin: SpinValue,
    couplings: CouplingPattern,
    boundary: Boundary,
) -> Result<LadderSpec> {
    build_spec_with_cap(n_rungs, spin, couplings, boundary, DEFAULT_SIZE_CAP)
}

pub fn build_spec_with_cap(
    n_rungs: usize,
    spin: SpinValue,
    couplings: CouplingPattern,
    boundary: Boundary,
    cap: u128,
) -> Result<LadderSpec> {
    if n_rungs == 0 {
        return Err(Error::NoRungs);
    }
    for (name, values) in couplings.arrays() {
        if values.len() != n_rungs {
            return Err(Error::CouplingLength {
                name,
                expected: n_rungs,
                found: values.len(),
            });
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(**v >= 0.0) || !v.is_finite())
        {
            return Err(Error::NegativeCoupling { name, index, value });
        }
    }
    if boundary == Boundary::Periodic && n_rungs % 2 == 1 {
        return Err(Error::OddPeriodic(n_rungs));
    }
    let dim = (spin.dim() as u128).checked_pow(2 * n_rungs as u32);
    match dim {
        Some(d) if d <= cap => {}
        Some(d) => return Err(Error::SizeCap { dim: d, cap }),
        None => return Err(Error::SizeCap { dim: u128::MAX, cap }),
    }
    let uniform = couplings.as_uniform();
    Ok(LadderSpec {
        n_rungs,
        spin,
        couplings,
        boundary,
        uniform,
    })
}

/// Convenience constructor for uniform ladders.
pub fn uniform_spec(
    n_rungs: usize,
    spin: SpinValue,
    couplings: UniformCouplings,
    boundary: Boundary,
) -> Result<LadderSpec> {
    build_spec(
        n_rungs,
        spin,
        CouplingPattern::uniform(n_rungs, couplings),
        boundary,
    )
}
