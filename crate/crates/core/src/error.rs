use thiserror::Error;

/// Everything that can go wrong inside the core crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |H - H*| = {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is rank deficient (smallest/largest singular value = {ratio:e})")]
    RankDeficient { ratio: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("non-finite entry at index {0}")]
    NonFinite(usize),

    #[error("duplicate frequency {0}")]
    DuplicateFrequencies(i64),

    #[error("base vector has squared norm {0}, expected 1")]
    NonUnitBaseVector(f64),

    #[error("sigma-delta order {order} exceeds the number of samples {len}")]
    OrderExceedsLength { order: usize, len: usize },

    #[error("invalid decimation plan: {0}")]
    InvalidPlan(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("entry {index} is off the lattice (deviation {deviation:e})")]
    OffLattice { index: usize, deviation: f64 },

    #[error("lattice value {value} at entry {index} does not fit the {width}-bit field")]
    RangeOverflow { index: usize, value: i128, width: u32 },

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("payload truncated: need {needed} bytes, have {available}")]
    TruncatedPayload { needed: usize, available: usize },

    #[error("{0} trailing bytes after payload")]
    TrailingBytes(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
