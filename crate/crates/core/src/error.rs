use serde::Serialize;
use thiserror::Error;

/// An induced copy of a named pattern found where the caller promised none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Which pattern was found, e.g. `"H"` or `"J"`.
    pub pattern: String,
    /// Host vertex for each pattern vertex, in pattern order.
    pub map: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("hypothesis violated: {reason}")]
    Hypothesis { reason: String, witness: Option<Witness> },

    #[error("work budget exceeded: {0}")]
    Budget(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn hypothesis(reason: impl Into<String>) -> Self {
        Error::Hypothesis {
            reason: reason.into(),
            witness: None,
        }
    }

    pub(crate) fn found(reason: impl Into<String>, pattern: &str, map: Vec<usize>) -> Self {
        Error::Hypothesis {
            reason: reason.into(),
            witness: Some(Witness {
                pattern: pattern.to_string(),
                map,
            }),
        }
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Error::Hypothesis { witness, .. } => witness.as_ref(),
            _ => None,
        }
    }
}
