use thiserror::Error;

/// Errors raised by the library. Variants mirror the failure modes callers need
/// to distinguish: malformed input, degenerate geometry, and non-generic data.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("hull is degenerate: affine dimension {affine_dim} in ambient dimension {ambient}")]
    DegenerateHull { affine_dim: usize, ambient: usize },

    #[error("configuration is not full-dimensional (dimension {dim} in ambient dimension {ambient})")]
    DegenerateConfiguration { dim: usize, ambient: usize },

    #[error("negative power of a zero coordinate")]
    ZeroBase,

    #[error("negative power of a non-monomial substitution")]
    NonInvertibleSubstitution,

    #[error("non-generic input: evaluation matrix has rank {rank}, expected {expected}")]
    DegenerateInput { rank: usize, expected: usize },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("no essential subset: the resultant is trivially 1")]
    NotEssential,

    #[error("facial system along normal {normal:?} has a common root (directional resultant is 0)")]
    FaceSystemDegenerate { normal: Vec<i64> },

    #[error("sign resolution failed: {passing} signed candidates vanish on the basis")]
    SignResolutionFailure { passing: usize },

    #[error("extra point coincides with input point {index}")]
    CoincidentExtraPoint { index: usize },

    #[error("eliminant residual of degree {degree} could not be reduced to a single certified factor")]
    ExtraneousFactorAmbiguity { degree: usize },

    #[error("rational reconstruction failed: {0}")]
    RationalReconstructionFailure(String),

    #[error("ill-conditioned numeric problem (estimate {estimate:e})")]
    IllConditioned { estimate: f64 },

    #[error("system has a positive-dimensional solution set")]
    PositiveDimensional,

    #[error("not a Chasles structure: {0}")]
    NotChasles(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for errors caused by degenerate or non-generic mathematical data,
    /// as opposed to malformed input.
    pub fn is_degeneracy(&self) -> bool {
        !matches!(
            self,
            Error::InvalidInput(_) | Error::Parse(_) | Error::DimensionMismatch { .. } | Error::Unsupported(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
