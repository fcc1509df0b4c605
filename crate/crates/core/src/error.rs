use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised across the library. The variants fall into four classes
/// (see [`Error::class`]) which the command-line tool maps to exit codes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid Cartan type: {0}")]
    InvalidCartanType(String),
    #[error("{module}: resource guard exceeded: {detail}")]
    Guard { module: &'static str, detail: String },
    #[error("elements belong to different Lie algebras")]
    ParentMismatch,
    #[error("operation undefined for the zero element")]
    ZeroElement,
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("search region contains no nonzero cocharacter (bound {0})")]
    EmptySearchRegion(String),
    #[error("characteristic {p} is bad for {cartan}")]
    BadPrime { p: u64, cartan: String },
    #[error("no Richardson representative found after {0} attempts")]
    NoRepresentative(usize),
    #[error("element is not supported on the Levi subalgebra")]
    NotInLevi,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("trace form is degenerate: {0}")]
    DegenerateTraceForm(String),
    #[error("division by an exact zero")]
    DivisionByZero,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("witness search exhausted its budget of {0} seeds")]
    WitnessBudgetExhausted(usize),
    #[error("exponential truncation requires p > {needed}, got p = {p}")]
    ExponentialTruncation { p: u64, needed: u64 },
    #[error("assertion falsified: {0}")]
    Falsified(String),
}

/// Coarse error classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// A checked mathematical claim failed.
    Falsified,
    /// An enumeration or memory guard was hit.
    Resource,
    /// The request itself was malformed or outside the supported domain.
    Config,
}

impl Error {
    pub fn guard(module: &'static str, detail: impl Into<String>) -> Self {
        Error::Guard {
            module,
            detail: detail.into(),
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Falsified(_) => ErrorClass::Falsified,
            Error::Guard { .. }
            | Error::PrecisionExhausted(_)
            | Error::WitnessBudgetExhausted(_)
            | Error::EmptySearchRegion(_)
            | Error::NoRepresentative(_) => ErrorClass::Resource,
            _ => ErrorClass::Config,
        }
    }
}
