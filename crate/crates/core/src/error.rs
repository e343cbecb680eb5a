use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("denominator vanishes identically under binding {binding}")]
    DenominatorVanishes { binding: String },

    #[error("irrational pole: square-free denominator factor `{factor}` has no rational root")]
    IrrationalPole { factor: String },

    #[error("inverted Laurent window [{min}, {max}]")]
    WindowInverted { min: i64, max: i64 },

    #[error("curve `{curve}` invalid: {reason}")]
    CurveInvalid { curve: String, reason: String },

    #[error("critical point of {side} is irrational (factor `{factor}`); reparametrize the curve")]
    IrrationalCriticalPoint { side: String, factor: String },

    #[error("critical point {point} of {side} is not simple")]
    NonSimpleCriticalPoint { side: String, point: String },

    #[error("missing correlation differential entry (g,m,n)=({g},{m},{n})")]
    MissingEntry { g: u32, m: u32, n: u32 },

    #[error("Laurent window exhausted at hard cap {cap} while expanding at {point}")]
    WindowExhausted { point: String, cap: i64 },

    #[error("pole at {location} belongs to neither splitting class")]
    UnclassifiedPole { location: String },

    #[error("nonzero polynomial part in a form expected to decay at infinity")]
    NonzeroPolynomialPart,

    #[error("{0}")]
    Invalid(String),

    #[error("internal invariant breach: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
