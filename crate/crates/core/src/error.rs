use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("k = {k} exceeds n = {n}")]
    KExceedsN { n: u64, k: u64 },

    #[error("sequence `{name}` vanishes at index {index}")]
    ZeroSequenceValue { name: String, index: u32 },

    /// A division that must be exact left a remainder. Seeing this means a bug.
    #[error("inexact division in {0}")]
    InexactDivision(&'static str),

    #[error("matrix is not unitriangular at ({row}, {col})")]
    NotUnitriangular { row: usize, col: usize },

    #[error("{what} = {value} is above the supported bound {bound}")]
    AboveBound {
        what: &'static str,
        value: u64,
        bound: u64,
    },

    #[error("weights must be positive and nondecreasing")]
    InvalidWeights,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
