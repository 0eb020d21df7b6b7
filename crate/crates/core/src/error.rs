use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid presentation at {location}: {message}")]
    Field { location: String, message: String },

    #[error("unknown {kind} `{name}` referenced at {location}")]
    Reference {
        kind: &'static str,
        name: String,
        location: String,
    },

    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },

    #[error("binomial relation {index}: lhs and rhs do not share source and target")]
    BinomialEndpoints { index: usize },

    #[error("unknown arrow id {0}")]
    UnknownArrow(usize),

    #[error("presentation is not admissible: {0}")]
    NotAdmissible(String),

    #[error("presentation is not a string algebra: {0}")]
    NotStringAlgebra(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("root finder did not converge: {0}")]
    Convergence(String),
}

impl Error {
    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::InternalConsistency(msg.into())
    }
}
