use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn bad(msg: impl Into<String>) -> Self {
        Error::BadInput(msg.into())
    }

    pub fn check(msg: impl Into<String>) -> Self {
        Error::CheckFailed(msg.into())
    }

    /// Short machine-readable class name.
    pub fn class(&self) -> &'static str {
        match self {
            Error::BadInput(_) => "bad_input",
            Error::Resource(_) => "resource",
            Error::DivisionByZero => "division_by_zero",
            Error::CheckFailed(_) => "check_failed",
            Error::Unsupported(_) => "unsupported",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
