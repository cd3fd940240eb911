use num_complex::Complex64;
use thiserror::Error;

/// Domain errors raised by the library.
///
/// The variant name is part of the external contract: the CLI reports it
/// verbatim in the `error` field of its JSON output.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial {0} is not monic")]
    NotMonic(&'static str),
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("differentiation order k must be a positive integer")]
    ZeroOrder,
    #[error("degree mismatch: deg P = {p}, deg Q = {q}")]
    DegreeMismatch { p: usize, q: usize },
    #[error("factorization impossible: alpha_{index} = {alpha} vanishes but beta_{index} = {beta} does not")]
    FactorizationImpossible {
        index: usize,
        alpha: Complex64,
        beta: Complex64,
    },
    #[error("reconstruction error {0:e} exceeds tolerance")]
    ReconstructionFailed(f64),
    #[error("empty input")]
    EmptyInput,
    #[error("empty root set")]
    EmptyRootSet,
    #[error("zero of S at the origin (index {0})")]
    SZeroAtOrigin(usize),
    #[error("integer overflow in combinatorial scalar")]
    Overflow,
    #[error("invalid region: {0}")]
    InvalidRegion(String),
}

impl Error {
    /// Stable identifier of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotMonic(_) => "NotMonic",
            Error::DegreeZero => "DegreeZero",
            Error::ZeroOrder => "ZeroOrder",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::FactorizationImpossible { .. } => "FactorizationImpossible",
            Error::ReconstructionFailed(_) => "ReconstructionFailed",
            Error::EmptyInput => "EmptyInput",
            Error::EmptyRootSet => "EmptyRootSet",
            Error::SZeroAtOrigin(_) => "SZeroAtOrigin",
            Error::Overflow => "Overflow",
            Error::InvalidRegion(_) => "InvalidRegion",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
