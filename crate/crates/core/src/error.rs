//! Error types shared by every module of the crate.

/// Crate-wide error type. Variants mirror the failure families of the
/// library: invalid inputs, domain violations of the iterated-log scale,
/// sampled precondition failures, and resource guards.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A series description is malformed, or a custom term rule emitted a
    /// nonpositive (or non-finite) value.
    #[error("invalid series spec: {0}")]
    InvalidSpec(String),

    /// An argument left the mathematical domain of an operation
    /// (e.g. an iterated logarithm of a nonpositive intermediate).
    #[error("domain error: {0}")]
    Domain(String),

    /// A sampled precondition did not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Monotonicity was required and a violating adjacent pair was found.
    #[error("monotonicity violated at n={index}: a_n={before}, a_(n+1)={after}")]
    MonotonicityViolated { index: u64, before: f64, after: f64 },

    /// A declared bound on a value sequence was exceeded.
    #[error("bound violated at n={index}: value {value} exceeds declared bound {bound}")]
    BoundViolated { index: u64, value: f64, bound: f64 },

    /// The operation does not apply to the given parameters
    /// (e.g. tail bracketing of a divergent series).
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// A supplied weight function is not increasing on the sampled range.
    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    /// A resource guard was hit (input too large, span cap, block guard).
    #[error("resource guard exceeded: {0}")]
    GuardExceeded(String),

    /// Input exceeds the documented size guard of a combinatorial search.
    #[error("input too large: {0}")]
    InputTooLarge(String),

    /// Sieve limit above the supported maximum.
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    /// A prime-table query needs a larger sieve than the one built.
    #[error("table too small: {0}")]
    TableTooSmall(String),

    /// Textual expression could not be parsed; `offset` is a byte offset
    /// into the input.
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code family for the CLI: 2 for precondition-like
    /// failures, 3 for resource guards.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::GuardExceeded(_) | Error::InputTooLarge(_) | Error::LimitExceeded(_) => 3,
            _ => 2,
        }
    }
}
