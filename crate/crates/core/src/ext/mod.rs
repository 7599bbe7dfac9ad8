//! Twisting pairs, twisted products and their structure.

pub mod equivalence;
pub mod outer;
pub mod pair;
pub mod subext;
pub mod twisted;
pub mod twisting_function;

pub use equivalence::{find_equivalence, Equivalence};
pub use outer::{all_outer_actions, induced_outer_action, OuterAction};
pub use pair::TwistingPair;
pub use subext::{conjugation_action, n_group_extension, normalizer_subextension};
pub use twisted::{canonical_section, recognize_extension, semidirect, twisted_product, Extension};
pub use twisting_function::{check_twisting_function, expand_twisting_function};
