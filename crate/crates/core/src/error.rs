use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid prime {0}: only odd primes are supported")]
    InvalidPrime(u64),

    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),

    #[error("precision {precision} is out of range for p = {prime}")]
    PrecisionOutOfRange { prime: u64, precision: u32 },

    #[error("{0} is not a unit")]
    NonUnit(String),

    #[error("{0} is not divisible by p")]
    NotDivisibleByP(String),

    #[error("convergence precondition violated: {0}")]
    Convergence(String),

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("target is not in the image of the logarithm: {0}")]
    NotInImage(String),

    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("weight mismatch: {0}")]
    Weight(String),

    #[error("invalid extension spec: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// An identity that holds for every valid input failed; this is a bug.
    #[error("internal arithmetic check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag used in JSON error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPrime(_) => "invalid_prime",
            Error::PrimeMismatch(..) => "prime_mismatch",
            Error::PrecisionOutOfRange { .. } => "precision_out_of_range",
            Error::NonUnit(_) => "non_unit",
            Error::NotDivisibleByP(_) => "not_divisible_by_p",
            Error::Convergence(_) => "convergence",
            Error::PrecisionExhausted(_) => "precision_exhausted",
            Error::NotInImage(_) => "not_in_image",
            Error::Indeterminate(_) => "indeterminate",
            Error::Weight(_) => "weight_mismatch",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::Parse(_) => "parse",
            Error::Internal(_) => "internal",
        }
    }
}
