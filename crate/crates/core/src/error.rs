use alloc::string::String;

/// Errors raised by the construction and verification routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("index {index} exceeds the enumeration capacity {cap}")]
    Capacity { index: u64, cap: u64 },

    #[error("source exhausted: {0}")]
    Exhausted(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("point (r = {r}, theta = {theta}) lies outside the sector")]
    OutOfSector { r: f64, theta: f64 },

    #[error(
        "radial ladder stalled at level {level}: r = {r} does not increase at working precision"
    )]
    LadderStalled { level: usize, r: f64 },

    #[error("gap {gap} between consecutive witness terms does not exceed {bound}")]
    GapViolation { gap: f64, bound: f64 },

    #[error("least-squares system lost full rank at column {column} of {columns}")]
    IllConditioned { column: usize, columns: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("z = {re} + {im}i lies outside the compact set L")]
    OutsideCompact { re: f64, im: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
