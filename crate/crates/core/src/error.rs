use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unpaired arc label {0}")]
    UnpairedLabel(u32),

    #[error("arc label {label} appears {count} times")]
    LabelCount { label: u32, count: usize },

    #[error("orientation inconsistency: {0}")]
    Orientation(String),

    #[error("crossing {0} incomplete")]
    IncompleteCrossing(u32),

    #[error("crossing {0} has mismatched signs")]
    SignMismatch(u32),

    #[error("crossing {0} appears more than twice")]
    RepeatedCrossing(u32),

    #[error("code is not realizable as a planar diagram")]
    NonPlanar,

    #[error("unknown crossing id {0}")]
    UnknownCrossing(u32),

    #[error("component index {index} out of range (diagram has {count} components)")]
    ComponentOutOfRange { index: usize, count: usize },

    #[error("diagram is not alternating")]
    NotAlternating,

    #[error("diagram is not reduced alternating")]
    NotReducedAlternating,

    #[error("diagram is split; compute per split component")]
    SplitDiagram,

    #[error("recursion budget of {0} exhausted")]
    BudgetExhausted(usize),

    #[error("search limit exceeded: {crossings} crossings > limit {limit}")]
    SearchLimit { crossings: usize, limit: usize },

    #[error("no sigma-series found within the search budget")]
    NoSigmaSeries,

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("division by zero in continued fraction")]
    DegenerateFraction,

    #[error("formula requires a knot fraction (odd numerator), got {0}")]
    NotAKnot(String),

    #[error("unknown fixture {0}")]
    UnknownFixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
