use thiserror::Error;

use crate::terms::Var;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("symbol `{symbol}` expects {expected} argument(s) but got {found}")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("variable {0} is not bound by the assignment")]
    UnboundVariable(Var),

    #[error("right-hand side variables {0} do not occur in the left-hand side")]
    RuleVariables(String),

    #[error("invalid position {0}")]
    InvalidPosition(String),

    #[error("duplicate symbol `{0}` in signature")]
    DuplicateSymbol(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("behavior state space exceeds the cap of {cap} states")]
    StateCap { cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
