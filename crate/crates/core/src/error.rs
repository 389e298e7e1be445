use thiserror::Error;

/// Violations of the structural invariants of an automaton or generator input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("state index {0} is out of range")]
    StateOutOfRange(usize),
    #[error("symbol index {0} is out of range")]
    SymbolOutOfRange(usize),
    #[error("duplicate state name `{0}`")]
    DuplicateState(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("rule for `{symbol}` has {found} children but the symbol has arity {expected}")]
    ArityMismatch { symbol: String, expected: usize, found: usize },
    #[error("symbol `{symbol}` is used with arities {first} and {second}")]
    ArityConflict { symbol: String, first: usize, second: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot draw {requested} distinct transitions for `{symbol}` from {available} candidates")]
    TooManyTransitions { symbol: String, requested: usize, available: usize },
}

/// Errors raised by the text-format parsers. Every variant carries the
/// 1-based line number it was detected on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: symbol `{symbol}` has arity {declared} but the rule has {used} children")]
    Arity { line: usize, symbol: String, declared: usize, used: usize },
    #[error("line {line}: undeclared state `{name}`")]
    UndeclaredState { line: usize, name: String },
    #[error("line {line}: undeclared symbol `{name}`")]
    UndeclaredSymbol { line: usize, name: String },
    #[error("{0}")]
    Model(#[from] ModelError),
}

impl ParseError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax { line, message: message.into() }
    }
}
