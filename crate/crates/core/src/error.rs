use thiserror::Error;

/// Errors raised by the exact engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("genericity violation on edge {edge}: {msg}")]
    Genericity { edge: String, msg: String },
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("malformed curve: {0}")]
    Malformed(String),
    #[error("curve graph is disconnected")]
    Disconnected,
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("construction check failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
