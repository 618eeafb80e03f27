use std::fmt;

/// Failure classes shared by every evaluator in the crate.
///
/// The CLI maps each class onto exactly one exit code, so new variants should
/// only be added together with a new code.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The argument sits on (or inside the guard radius of) a pole.
    #[error("pole: {0}")]
    Pole(String),
    /// The argument is outside the region where the routine is defined.
    #[error("domain: {0}")]
    Domain(String),
    /// An iterative evaluation exhausted its iteration or term budget.
    #[error("convergence: {0}")]
    Convergence(String),
    /// The result does not fit in a double.
    #[error("overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn pole(msg: impl fmt::Display) -> Self {
        Error::Pole(msg.to_string())
    }

    pub(crate) fn domain(msg: impl fmt::Display) -> Self {
        Error::Domain(msg.to_string())
    }

    pub(crate) fn convergence(msg: impl fmt::Display) -> Self {
        Error::Convergence(msg.to_string())
    }

    pub(crate) fn overflow(msg: impl fmt::Display) -> Self {
        Error::Overflow(msg.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
