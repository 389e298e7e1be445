//! Data model shared by the simulation engines and the reference oracles.
//!
//! Four kinds of automata live here: labelled transition systems ([`Lts`]),
//! nondeterministic finite word automata ([`Nfa`]), bottom-up tree automata
//! ([`TreeAutomaton`]) and alternating Büchi automata ([`Aba`]). States and
//! symbols are dense `usize` indices internally; their external names are
//! kept alongside for parsing and reporting.
//!
//! All values are immutable once constructed and can be shared freely
//! between threads.

pub mod aba;
pub mod error;
pub mod format;
pub mod generate;
pub mod lts;
pub mod nfa;
pub mod relation;
pub mod ta;

pub use aba::{normalize_aba, Aba};
pub use error::{ModelError, ParseError};
pub use lts::Lts;
pub use nfa::{union_nfa, Nfa};
pub use relation::{relation_ae, StateRelation, StateSet};
pub use ta::{union_ta, RankedSymbol, Rule, Tree, TreeAutomaton};

/// Index of a state inside one automaton.
pub type StateId = usize;
/// Index of a symbol inside one automaton's alphabet.
pub type SymbolId = usize;

pub(crate) fn check_unique(names: &[String], dup: fn(String) -> ModelError) -> Result<(), ModelError> {
    let mut seen = std::collections::HashSet::with_capacity(names.len());
    for name in names {
        if !seen.insert(name.as_str()) {
            return Err(dup(name.clone()));
        }
    }
    Ok(())
}
