//! Small named objects used in examples, tests and benchmarks.

use crate::error::Result;
use crate::group::{bar_construction, GroupTable};
use crate::partial_group::PartialGroup;
use crate::word::{Letter, Word};

pub fn bar_cyclic(n: usize, level: usize) -> Result<PartialGroup> {
    bar_construction(&GroupTable::cyclic(n), level)
}

pub fn bar_klein(level: usize) -> Result<PartialGroup> {
    bar_construction(&GroupTable::klein(), level)
}

pub fn bar_symmetric3(level: usize) -> Result<PartialGroup> {
    bar_construction(&GroupTable::symmetric3(), level)
}

pub fn bar_dihedral8(level: usize) -> Result<PartialGroup> {
    bar_construction(&GroupTable::dihedral(4), level)
}

/// Two copies of the group of order 2 glued along the unit: elements
/// `1, a, b`, with only the powers of a single letter as words.
pub fn amalgam(level: usize) -> Result<PartialGroup> {
    let names = ["1", "a", "b"].map(String::from).to_vec();
    let words = (3..=level).flat_map(|n| (1..3 as Letter).map(move |x| Word::from_slice(&vec![x; n])));
    PartialGroup::from_parts(names, vec![0, 1, 2], level, words, [(1, 1, 0), (2, 2, 0)], false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn amalgam_is_a_partial_group() {
        let m = amalgam(6).unwrap();
        assert!(m.validate().is_ok(), "{:?}", m.validate().violations);
        let (a, b) = (1, 2);
        assert!(!m.member(&[a, b]));
        assert_eq!(m.pi(&[a, a]), Some(0));
        assert_eq!(m.pi(&[a, a, a]), Some(a));
        assert_eq!(m.face(&[a, a, a], 1).unwrap().canonical(), Word::from([a]));
    }
}
