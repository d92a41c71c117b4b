use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Variants fall into three families that the CLI maps onto distinct exit codes:
/// malformed input and violated preconditions, resource budgets, and numerical
/// singularities.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid tree structure: {0}")]
    Structure(String),

    #[error("precondition violated: {0}")]
    Domain(String),

    #[error("budget exceeded: {what} is {count}, limit {limit}")]
    Budget {
        what: &'static str,
        count: String,
        limit: String,
    },

    #[error("singular evaluation: {0}")]
    Singular(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn budget(
        what: &'static str,
        count: impl ToString,
        limit: impl ToString,
    ) -> Self {
        Error::Budget {
            what,
            count: count.to_string(),
            limit: limit.to_string(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
