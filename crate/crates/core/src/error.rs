use thiserror::Error;

/// Errors shared by every stage of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("resource limit exceeded: {what} (cap {cap})")]
    Resource { what: &'static str, cap: usize },
    #[error("truncation: {0}")]
    Truncation(String),
    #[error("search budget of {budget} nodes exhausted; {partial} is a lower bound")]
    Budget { budget: u64, partial: u64 },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn truncation(msg: impl Into<String>) -> Self {
        Error::Truncation(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
