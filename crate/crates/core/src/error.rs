use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the alternative set is empty")]
    EmptySet,

    #[error("alternative index {index} is out of range for {size} alternatives")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("alternative set has universe {found}, tournament has {expected} alternatives")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("alternative {0} is not in the queried set")]
    NotInSet(usize),

    #[error("unknown alternative name `{0}`")]
    UnknownName(String),

    #[error("invalid tournament: {0}")]
    InvalidTournament(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("clause {clause}: {msg}")]
    InvalidClause { clause: usize, msg: String },

    #[error("{what} is {value}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("invalid choice set: {0}")]
    InvalidChoiceSet(String),

    #[error("satisfiability oracles disagree on the formula")]
    OracleDisagreement,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
