use thiserror::Error;

/// Errors raised by the exact engine.
///
/// Most variants signal that a mathematical assumption was violated at
/// runtime. They are never recovered from silently.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("matrix is not positive semidefinite")]
    NotPsd,

    #[error("matrix is not half-integral: {0}")]
    NotHalfIntegral(String),

    #[error("rank {0} is odd; an even rank is required")]
    OddRank(usize),

    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("local factor has a nonzero beta component: {0}")]
    NonRationalLocalFactor(String),

    #[error("Siegel polynomial degree {degree} is unsupported (p = {p}, size {size})")]
    DegreeUnsupported { p: u64, size: usize, degree: u32 },

    #[error("non-integral coefficient in F_p (p = {p}): {detail}")]
    NonIntegerCoefficient { p: u64, detail: String },

    #[error("functional equation mismatch for F_p (p = {p}): {detail}")]
    FunctionalEquation { p: u64, detail: String },

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("exponential sum is not a rational integer: {0}")]
    NonIntegralSum(String),

    #[error("coefficient matrix is rank deficient")]
    RankDeficient,

    #[error("target not in span: {0}")]
    InconsistentSystem(String),

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("assertion failed: {0}")]
    Assertion(String),

    #[error("missing curated value `{0}`")]
    MissingCurated(String),

    #[error("curated value `{0}` has no provenance")]
    Unprovenanced(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
