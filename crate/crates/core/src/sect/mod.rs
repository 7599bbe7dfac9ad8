//! Sections of extensions, derivations for an action, nonabelian `H¹`, and
//! regular split extensions as semidirect products.

mod chain;
mod derivation;
mod section;
mod split;

pub use chain::{normalize_homotopy_chain, HomotopyChain};
pub use derivation::{
    check_derivation, check_derivation_equivalence, derivations, h1_nonabelian, Derivation, NonabelianH1,
};
pub use section::{find_sections, find_sections_with_cap, section_classes, Section, DEFAULT_SECTION_CAP};
pub use split::{
    derivation_to_section, h1_correspondence, regular_section_obstruction, regular_split_normalize,
    section_to_derivation, RegularSplit,
};
