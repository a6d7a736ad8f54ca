//! Crate-wide error type.

use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors reported by the numeric engine.
///
/// Numeric non-convergence is always surfaced as an error or a
/// `NonConverged` report status, never as a silently wrong value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A request exceeded a configured resource ceiling (e.g. digits).
    ResourceLimit {
        what: &'static str,
        requested: u64,
        ceiling: u64,
    },
    /// An argument outside the principal domain of a function.
    Domain {
        func: &'static str,
        message: String,
    },
    DivisionByZero,
    /// An iterative scheme failed to reach its tolerance. Carries the last
    /// two estimates as decimal strings so the caller can judge how close
    /// the run came.
    NonConvergence {
        what: &'static str,
        last: String,
        previous: String,
    },
    /// Working precision was exhausted before a decision could be made
    /// (distinct from "no relation within the coefficient bound").
    PrecisionExhausted { what: &'static str },
    UnknownId { id: String },
    InvalidInput { message: String },
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::ResourceLimit {
                what,
                requested,
                ceiling,
            } => write!(
                f,
                "resource limit: {what} request {requested} exceeds ceiling {ceiling}"
            ),
            Error::Domain { func, message } => write!(f, "domain error in {func}: {message}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NonConvergence {
                what,
                last,
                previous,
            } => write!(
                f,
                "{what} did not converge; last two estimates {previous} and {last}"
            ),
            Error::PrecisionExhausted { what } => {
                write!(f, "working precision exhausted in {what}")
            }
            Error::UnknownId { id } => write!(f, "unknown identifier: {id}"),
            Error::InvalidInput { message } => write!(f, "invalid input: {message}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
