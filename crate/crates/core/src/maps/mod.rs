//! Homomorphisms, homotopies, normalizers and automorphisms.

pub mod aut;
pub mod hom;
pub mod homotopy;
pub mod nerve;
pub mod normalizer;

pub use aut::{automorphisms, automorphisms_with_cap, AutData, DEFAULT_AUT_CAP};
pub use hom::{apply_word, check_homomorphism, check_isomorphism, compose, identity_map, Homomorphism, Witness};
pub use homotopy::{check_homotopy, Homotopy};
pub use nerve::{aut_nerve, pi_report, Arrow, Chain, PiReport};
pub use normalizer::{normalizer, Normalizer};
