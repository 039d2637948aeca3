use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// A lower Pochhammer factor vanished while the numerator did not.
    #[error("degenerate denominator at term {index} of a hypergeometric sum")]
    DegenerateDenominator { index: usize },

    /// A value still carries a power of √π where a rational was expected.
    #[error("residual factor π^({sqrt_pi_power}/2) where a rational was expected")]
    PiResidue { sqrt_pi_power: i32 },

    #[error("unsupported Dyson parameter {0}")]
    UnsupportedAlpha(String),

    #[error("unknown monomial family {0}")]
    UnknownFamily(String),

    #[error("identity violated: expected {expected}, got {actual}")]
    IdentityViolation { expected: String, actual: String },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("accumulator shapes differ: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("need at least {needed} samples, have {have}")]
    InsufficientData { needed: u64, have: u64 },

    #[error("tolerance {requested:e} not met (best error bound {achieved:e})")]
    ToleranceNotMet { requested: f64, achieved: f64 },

    #[error("linear system has no usable solution")]
    NoSolution,

    #[error("fitted function disagrees with held-out point k = {k}")]
    HoldoutMismatch { k: i64 },

    #[error("density is singular at a simplex boundary point")]
    BoundaryPoint,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
