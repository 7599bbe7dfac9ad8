//! The normalizer `N(M)`: elements whose two-letter insertions `[η|η⁻¹]`
//! stay inside the domain, and the centre `Z(M)` of elements whose
//! conjugation is the identity.

use crate::maps::hom::{check_isomorphism, identity_map};
use crate::maps::homotopy::{check_homotopy, conjugation_word};
use crate::partial_group::PartialGroup;
use crate::word::{Letter, Word, UNIT};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalizer {
    /// Members in id order; always starts with the unit.
    pub elements: Vec<Letter>,
    /// Conjugation `x -> η·x·η⁻¹` for each member, same order as `elements`.
    pub conjugations: Vec<Vec<Letter>>,
    pub center: Vec<Letter>,
    /// True when membership is certain: the partial group was declared
    /// complete, or nothing but the unit passed. A failed insertion within
    /// the level is a witness, a passed one may fail on longer words.
    pub exact: bool,
}

impl Normalizer {
    pub fn contains(&self, x: Letter) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn position(&self, x: Letter) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn conjugation(&self, x: Letter) -> Option<&[Letter]> {
        self.position(x).map(|i| self.conjugations[i].as_slice())
    }

    pub fn in_center(&self, x: Letter) -> bool {
        self.center.binary_search(&x).is_ok()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Whether every insertion of `[η|η⁻¹]` into a stored word of length at most
/// `level - 2` is a member.
pub fn satisfies_insertion(p: &PartialGroup, eta: Letter) -> bool {
    let pair = [eta, p.inv(eta)];
    let top = p.level().saturating_sub(2);
    for u in p.words_up_to(top) {
        for k in 0..=u.len() {
            let mut w = Word::from_slice(&u[..k]);
            w.extend_from(&pair);
            w.extend_from(&u[k..]);
            if !p.member(&w) {
                return false;
            }
        }
    }
    true
}

/// Conjugation by `eta`, if every `[η|x|η⁻¹]` is a member.
pub fn conjugation(p: &PartialGroup, eta: Letter) -> Option<Vec<Letter>> {
    p.elements().map(|x| p.pi(&conjugation_word(eta, x, p))).collect()
}

pub fn normalizer(p: &PartialGroup) -> Normalizer {
    let id = identity_map(p.size());
    let mut elements = Vec::new();
    let mut conjugations = Vec::new();
    for eta in p.elements() {
        if !satisfies_insertion(p, eta) {
            continue;
        }
        let Some(c) = conjugation(p, eta) else { continue };
        // c_η must be an automorphism homotopic to the identity through η.
        if check_isomorphism(&c, p, p).is_err() || check_homotopy(&c, &id, eta, p, p).is_err() {
            continue;
        }
        elements.push(eta);
        conjugations.push(c);
    }
    let center = elements
        .iter()
        .zip(&conjugations)
        .filter(|(_, c)| **c == id)
        .map(|(&x, _)| x)
        .collect();
    debug_assert_eq!(elements.first(), Some(&UNIT));
    let exact = p.is_complete() || elements.len() == 1;
    Normalizer { elements, conjugations, center, exact }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn bar_of_s3_is_self_normalizing_with_trivial_center() {
        let p = catalog::bar_symmetric3(5).unwrap();
        let n = normalizer(&p);
        assert_eq!(n.elements, (0..6).collect::<Vec<_>>());
        assert_eq!(n.center, vec![0]);
        assert!(!n.exact);
    }

    #[test]
    fn amalgam_normalizer_is_trivial() {
        let m = catalog::amalgam(6).unwrap();
        let n = normalizer(&m);
        assert_eq!(n.elements, vec![0]);
        assert_eq!(n.center, vec![0]);
        assert!(n.exact);
        assert!(!satisfies_insertion(&m, 1));
    }
}
