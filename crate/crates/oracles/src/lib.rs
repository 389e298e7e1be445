//! Brute-force reference implementations.
//!
//! Everything here depends only on the core data model, never on the
//! engines, so that agreement between the two is meaningful. The code
//! favours obviousness over speed; every exhaustive search has an explicit
//! bound and fails with [`OracleError`] instead of truncating.

pub mod aba;
pub mod contexts;
pub mod fa;
pub mod sim;
pub mod ta;
pub mod words;

use thiserror::Error;

pub use aba::{
    aba_lasso_difference, aba_lasso_language_equal, aba_lasso_member, aba_to_nba, all_lassos, nba_lasso_member,
    LassoWord,
};
pub use contexts::{context_accepted, enumerate_contexts, Context};
pub use fa::{fa_inclusion_product, fa_universal_subset};
pub use sim::{
    naive_backward_simulation_aba, naive_env_preorder, naive_lts_bisimulation, naive_lts_simulation,
    naive_upward_simulation, EnvKey, NaiveEnvPreorder,
};
pub use ta::{all_trees, ta_determinize, ta_inclusion_classical, ta_universal_classical, tree_language_bounded, DetTa};
pub use words::{all_words, word_language_bounded};

/// Default bound on the number of macro-states a determinization may build.
pub const DEFAULT_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("state-space cap of {0} macro-states exceeded")]
    CapExceeded(usize),
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("symbol `{0}` has conflicting arities")]
    ArityConflict(String),
}

/// Maps every symbol of `b` to the index of the equally named symbol of `a`.
pub(crate) fn align_alphabets(a: &[String], b: &[String]) -> Result<Vec<usize>, OracleError> {
    if a.len() != b.len() {
        return Err(OracleError::AlphabetMismatch);
    }
    b.iter().map(|s| a.iter().position(|t| t == s).ok_or(OracleError::AlphabetMismatch)).collect()
}
