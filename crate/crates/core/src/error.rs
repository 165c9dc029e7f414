use thiserror::Error;

/// Errors raised by exact-arithmetic operations.
///
/// Operations that cannot fail simply return their value; everything that
/// has a precondition returns `Result<_, Error>`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: operands are tagged {0} and {1}")]
    RingMismatch(&'static str, &'static str),

    #[error("constant term is not invertible in the coefficient ring")]
    NonInvertibleConstantTerm,

    #[error("denominator vanishes at 0")]
    DenominatorVanishesAtZero,

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix entries are not all integers")]
    NonIntegerEntries,

    #[error("repeated abscissa in interpolation data")]
    RepeatedAbscissa,

    #[error("integrality violated: {0}")]
    IntegralityViolation(String),

    #[error("series order {have} is too small (need at least {need})")]
    InsufficientOrder { need: usize, have: usize },

    #[error("the zero sequence has no invertible Hankel matrix")]
    ZeroSequence,

    #[error("sequence depth must be at least 1")]
    EmptyRecurrence,

    #[error("transfer function is not strictly proper (deg num {num} >= deg den {den})")]
    NotStrictlyProper { num: i64, den: i64 },

    #[error("numerator must not vanish at 1")]
    UnitRootInNumerator,

    #[error("inconsistent coefficients: {0}")]
    Inconsistent(String),

    #[error("root finding did not converge after {0} iterations")]
    RootFindingFailed(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
