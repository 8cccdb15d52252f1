use thiserror::Error;

use crate::textio::SourceError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid atom `{0}`: expected an identifier [a-zA-Z_][a-zA-Z0-9_]*")]
    InvalidAtom(String),

    #[error(transparent)]
    Source(#[from] SourceError),

    #[error("program is inconsistent")]
    InconsistentProgram,

    #[error("profile is empty")]
    EmptyProfile,

    #[error("profile member {0} is an empty program")]
    EmptyMember(usize),

    #[error("flock is empty")]
    EmptyFlock,

    #[error("maximal-subset enumeration over {candidates} candidate rules exceeds the limit of {limit}")]
    SizeLimitExceeded { candidates: usize, limit: usize },

    #[error("{postulate} needs a binding for `{var}`")]
    IncompleteBinding { postulate: String, var: String },

    #[error("{postulate} does not mention `{var}`")]
    UnexpectedBinding { postulate: String, var: String },

    #[error("{postulate}: {message}")]
    InvalidInstance { postulate: String, message: String },

    #[error("{0} is not a {1} postulate")]
    WrongFamily(String, &'static str),

    #[error("unknown postulate `{0}`")]
    UnknownPostulate(String),

    #[error("unknown strategy `{0}` (expected rk, h or eh)")]
    UnknownStrategy(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("the predicate does not hold on the instance to shrink")]
    PredicateNotHolding,

    #[error("corpus: {0}")]
    Corpus(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
