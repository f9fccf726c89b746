use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("characteristic 0 is not supported")]
    CharacteristicZero,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("ambient module mismatch: {0}")]
    AmbientMismatch(String),
    #[error("lift failed: {0}")]
    LiftFailure(String),
    #[error("{0} is a zero divisor on the module")]
    ZeroDivisor(String),
    #[error("module is not of finite length")]
    NotFiniteLength,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("case generation failed: {0}")]
    Generation(String),
    #[error("invalid input: {0}")]
    Input(String),
}
