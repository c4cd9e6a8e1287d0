use thiserror::Error;

/// Errors raised by the group-theoretic computations in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("{what} exceeds the limit of {limit}")]
    Capacity { what: &'static str, limit: usize },
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("the trivial element has the whole group as centralizer")]
    TrivialElement,
    #[error("thickness defined for infinite-order elements only")]
    TorsionElement,
    #[error("graph is not a tree: {0}")]
    NotATree(String),
    #[error("undecided at bound {0}")]
    Undecided(usize),
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("gluing graph is disconnected")]
    Disconnected,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
