//! Cochains with coefficients in the fiber center, the obstruction class of
//! an outer action, and the classification of extensions by `H²`.

pub mod classify;
pub mod complex;
pub mod lattice;
pub mod module;
pub mod obstruction;
pub mod oracle;

pub use classify::{classify_extensions, classify_extensions_with, Classification, ClassifyOptions, ExtensionClass};
pub use complex::{build_complex, build_complex_to, Cochain, CochainComplex, Cohomology};
pub use module::CoefficientModule;
pub use obstruction::{obstruction, obstruction_with_lift, Obstruction};
pub use oracle::{brute_force_cohomology, OracleReport, ORACLE_LIMIT};
