use alloc::string::String;
use core::fmt;

/// Failure modes shared across the crate.
///
/// `Domain` and `Precondition` flag inputs that violate an operation's
/// contract. `Resolution` and `Capacity` mean the request exceeded the grid
/// or size budget in force — a retry with a finer grid or a larger cap may
/// succeed. `Numerical` means an internal solver could not certify its
/// tolerance; where available the achieved residual is attached.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    Domain(String),
    Precondition(String),
    Resolution(String),
    Capacity { what: String, achieved: Option<f64> },
    Numerical { what: String, residual: Option<f64> },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn resolution(msg: impl Into<String>) -> Self {
        Error::Resolution(msg.into())
    }
    pub fn capacity(what: impl Into<String>, achieved: Option<f64>) -> Self {
        Error::Capacity { what: what.into(), achieved }
    }
    pub fn numerical(what: impl Into<String>, residual: Option<f64>) -> Self {
        Error::Numerical { what: what.into(), residual }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::Resolution(m) => write!(f, "resolution error: {m}"),
            Error::Capacity { what, achieved: Some(a) } => {
                write!(f, "capacity exceeded: {what} (achieved {a:e})")
            }
            Error::Capacity { what, achieved: None } => write!(f, "capacity exceeded: {what}"),
            Error::Numerical { what, residual: Some(r) } => {
                write!(f, "numerical failure: {what} (residual {r:e})")
            }
            Error::Numerical { what, residual: None } => write!(f, "numerical failure: {what}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
