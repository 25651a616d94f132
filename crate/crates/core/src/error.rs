use thiserror::Error;

/// Errors raised by the exact-arithmetic and enumeration routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial of degree {degree} does not fit a basis of degree {n}")]
    DegreeExceedsBasis { degree: usize, n: usize },

    #[error("polynomial is not palindromic with respect to degree {n}")]
    NotPalindromic { n: usize },

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("duplicate interpolation abscissa {0}")]
    DuplicateAbscissa(String),

    #[error("h* coefficient {index} is {value}, not an integer; input is not an Ehrhart polynomial")]
    NonIntegerHStar { index: usize, value: String },

    #[error("h* coefficient {index} is negative ({value})")]
    NegativeHStar { index: usize, value: String },

    #[error("invalid arbor: {0}")]
    InvalidArbor(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("interpolated Ehrhart polynomial predicts {predicted} points at m = {m}, enumeration found {counted}")]
    InterpolationMismatch {
        m: u64,
        predicted: String,
        counted: String,
    },

    #[error("point listing exceeds the cap of {cap} points")]
    PointCapExceeded { cap: u64 },

    #[error("size {size} exceeds the sweep cap {cap}; pass an override to run anyway")]
    SizeCapExceeded { size: usize, cap: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
