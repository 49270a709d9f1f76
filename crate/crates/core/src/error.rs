use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spin: 2S must be >= 1 (got {0})")]
    InvalidSpin(u32),
    #[error("coupling arrays must have length {expected}, `{name}` has {found}")]
    CouplingLength {
        name: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("negative coupling {name}[{index}] = {value}")]
    NegativeCoupling {
        name: &'static str,
        index: usize,
        value: f64,
    },
    #[error("periodic boundary requires an even number of rungs (got {0})")]
    OddPeriodic(usize),
    #[error("number of rungs must be positive")]
    NoRungs,
    #[error("Hilbert dimension {dim} exceeds the cap {cap}")]
    SizeCap { dim: u128, cap: u128 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
    #[error("empty sector: 2Sz = {0} has no configurations")]
    EmptySector(i64),
    #[error("dimerized RPA is unstable for |gamma| = {0} >= 1")]
    Unstable(f64),
    #[error("pole in closed form: {0}")]
    Pole(String),
    #[error("unknown {kind} `{name}` (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
