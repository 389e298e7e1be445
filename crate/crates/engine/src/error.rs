use antisim_core::ModelError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("relation is not a preorder")]
    NotPreorder,
    #[error("relation is not an equivalence")]
    NotEquivalence,
    #[error("relation carrier has {found} states but the automaton has {expected}")]
    CarrierMismatch { expected: usize, found: usize },
    #[error("the alphabet is empty")]
    EmptyAlphabet,
    #[error("alphabets differ: {0}")]
    AlphabetMismatch(String),
    #[error("the tree automaton has no leaf symbol")]
    NoLeafSymbol,
    #[error("tuple has {found} components but `{symbol}` has arity {expected}")]
    ArityMismatch { symbol: String, expected: usize, found: usize },
    #[error("mediated preorder check failed: {0}")]
    MediatedCheck(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}
