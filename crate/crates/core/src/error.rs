use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("no node {0}")]
    NoSuchNode(usize),
    #[error("node {0} is singular")]
    SingularNode(usize),
    #[error("node {0} is classical")]
    ClassicalNode(usize),
    #[error("diagram has no crossings")]
    NoCrossings,
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("empty unlink")]
    EmptyUnlink,
    #[error("graph search bound exhausted on {0}")]
    SearchBound(String),
    #[error("stale reduction site")]
    StaleSite,
    #[error("engines disagree: state-sum {state_sum}, recursive {recursive}")]
    EngineDisagreement { state_sum: String, recursive: String },
    #[error("diagram is not single-colored")]
    MultiColored,
}

pub type Result<T> = core::result::Result<T, Error>;
