//! Simulation preorders and the antichain universality and inclusion
//! checkers for word, tree and alternating Büchi automata.

pub mod aba;
pub mod error;
pub mod lts_sim;

pub use aba::{
    aba_backward_simulation, aba_forward_simulation, backward_init_preorder, build_env_lts, extend_aba, is_ambiguous,
    mediated_preorder, quotient_aba, remove_ambiguity, remove_ambiguity_with, AbaEnvironment, AmbiguityRemoval, EnvLts,
};
pub use error::EngineError;
pub mod fa;
pub mod search;
pub mod ta;

pub use fa::{
    fa_forward_simulation, fa_inclusion, fa_inclusion_with, fa_universality, fa_universality_with, quotient_nfa,
};
pub use search::{minimize_macrostate, Engine, SearchStats, SimOptions, Verdict};
pub use ta::{
    initial_macrostates, post_tuple, ta_inclusion, ta_inclusion_with, ta_universality, ta_universality_with,
    ta_upward_simulation, upward_env_lts, TaEnvironment,
};
