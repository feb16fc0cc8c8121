use std::fmt;

use nullify_core::Error;

/// Exit status classes: bad input is a usage error (2), anything the
/// engines could not finish is a computation failure (1).
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Compute(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Compute(m) => write!(f, "computation failed: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExhausted(_)
            | Error::SearchLimit { .. }
            | Error::NoSigmaSeries
            | Error::SplitDiagram
            | Error::NotAlternating
            | Error::NotReducedAlternating => Failure::Compute(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

pub fn usage<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Usage(msg.into()))
}
