use thiserror::Error;

/// Errors raised by cost evaluation, coreset construction and the solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("enumeration budget exceeded: {needed} candidate sets, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("every enumerated candidate was refused by the solver ({refused} refusals)")]
    AllCandidatesRefused { refused: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn instance(msg: impl Into<String>) -> Self {
        Error::InvalidInstance(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
