use thiserror::Error;

use crate::events::EventSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("event `{0}` registered twice with different attributes")]
    ConflictingEvent(String),

    #[error("invalid event name `{0}`")]
    InvalidEventName(String),

    #[error("unknown event `{0}`")]
    UnknownEvent(String),

    #[error("alphabet mismatch: {left:?} vs {right:?}")]
    AlphabetMismatch { left: EventSet, right: EventSet },

    #[error("event set is not contained in the expected alphabet: {0}")]
    NotSubset(String),

    #[error("nondeterministic transition from state {state} on {event}")]
    Nondeterministic { state: usize, event: String },

    #[error("state {0} out of range")]
    StateOutOfRange(usize),

    #[error("event {0} not in the generator's alphabet")]
    EventNotInAlphabet(String),

    #[error("invalid coordination problem: {0}")]
    InvalidProblem(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{file}: {source}")]
    InFile {
        file: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
