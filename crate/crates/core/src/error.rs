use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCount { left: usize, right: usize },

    #[error("length mismatch: {left} vs {right}")]
    Length { left: usize, right: usize },

    #[error("division by zero polynomial")]
    DivisionByZero,

    /// Exact division failed. Inside seed mutation this means the Laurent
    /// phenomenon was violated, which is always a bug.
    #[error("not divisible: {dividend} / {divisor}")]
    NotDivisible { dividend: String, divisor: String },

    #[error("the zero polynomial has no fraction form")]
    ZeroPolynomial,

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("matrix is not antisymmetric at ({row}, {col})")]
    NotAntisymmetric { row: usize, col: usize },

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid seed: {0}")]
    InvalidSeed(String),

    #[error("representations live over different quivers or primes")]
    ContextMismatch,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("invalid size: {0}")]
    InvalidSize(String),

    /// Random search for a generic representation gave up; a larger prime
    /// or more attempts usually helps.
    #[error("no generic representation of dimension {dims:?} over F_{prime} after {attempts} attempts")]
    SamplingExhausted { dims: Vec<usize>, prime: u64, attempts: usize },

    #[error("dimension vector {sub:?} does not fit inside {ambient:?}")]
    DimensionOverflow { sub: Vec<usize>, ambient: Vec<usize> },

    #[error("grassmannian enumeration of {estimate} subspace tuples exceeds budget {budget}")]
    BudgetExceeded { estimate: String, budget: u64 },

    #[error("degree bound {given} is below the required {required}")]
    DegreeBound { given: usize, required: usize },

    #[error("need {needed} primes, got {given}")]
    NotEnoughPrimes { needed: usize, given: usize },

    /// Point counts did not interpolate to an integer polynomial: either the
    /// count is not polynomial in q or the family changed isoclass between primes.
    #[error("point counts {counts:?} at primes {primes:?} do not interpolate to an integral polynomial")]
    NonIntegralInterpolation { primes: Vec<u64>, counts: Vec<String> },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("exchange graph exploration is incomplete")]
    IncompleteGraph,

    #[error("{0} is not a cluster variable of the graph")]
    NotAClusterVariable(String),

    #[error("parse error: {0}")]
    Parse(String),
}
