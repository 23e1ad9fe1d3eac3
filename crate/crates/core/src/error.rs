use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported: planar functions only exist in odd characteristic")]
    EvenCharacteristic,
    #[error("unsupported characteristic {0}")]
    UnsupportedCharacteristic(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus {0} is reducible over the prime field")]
    ReducibleModulus(String),
    #[error("class of x is not a generator for modulus {0}")]
    NotPrimitive(String),
    #[error("field too large: {0}")]
    FieldTooLarge(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input")]
    ZeroInput,
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("expression mentions `a` but no parameter value was supplied")]
    UnboundParameter,
    #[error("k must be at least 1 for the constant-free polynomial")]
    InvalidK,
    #[error("polynomial is not DO-shaped: exponent {0} is not a sum of two powers of p")]
    NotDoShaped(u64),
    #[error("no threshold found up to e = {0}")]
    NoThreshold(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }
}
