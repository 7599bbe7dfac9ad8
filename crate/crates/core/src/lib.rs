//! Finite partial groups, their automorphisms and homotopies, twisted
//! products, extension classification by cohomology, and sections.

pub mod catalog;
pub mod coh;
pub mod error;
pub mod ext;
pub mod group;
pub mod io;
pub mod maps;
pub mod partial_group;
pub mod saturate;
pub mod sect;
pub mod structure;
mod util;
pub mod word;

pub use error::{Error, ErrorKind, Result};
pub use group::{bar_construction, GroupTable};
pub use partial_group::{default_level, Axiom, PartialGroup, ValidationReport, Violation, DEFAULT_LEVEL};
pub use saturate::{saturate, Saturation, Seeds};
pub use word::{Letter, Word, UNIT};
pub use coh::{classify_extensions, obstruction, Classification, CochainComplex, CoefficientModule, Cohomology, Obstruction};
pub use ext::{semidirect, twisted_product, Extension, OuterAction, TwistingPair};
pub use maps::{automorphisms, AutData};
pub use sect::{find_sections, Section};
