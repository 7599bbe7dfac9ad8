//! Outer actions: maps from base elements to outer automorphism classes
//! of the fiber that are multiplicative on length-2 base words.

use crate::error::{Error, Result};
use crate::ext::pair::TwistingPair;
use crate::maps::aut::AutData;
use crate::partial_group::PartialGroup;
use crate::word::{Letter, UNIT};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OuterAction {
    classes: Vec<usize>,
}

impl OuterAction {
    pub fn new(base: &PartialGroup, aut: &AutData, classes: Vec<usize>) -> Result<Self> {
        if classes.len() != base.size() {
            return Err(Error::Validation("outer action has the wrong number of entries".into()));
        }
        if let Some(&c) = classes.iter().find(|&&c| c >= aut.out_order()) {
            return Err(Error::IndexOutOfRange { index: c, size: aut.out_order() });
        }
        if classes[UNIT as usize] != 0 {
            return Err(Error::structural("outer action does not send 1 to the trivial class"));
        }
        for w in base.words_of_len(2) {
            let gh = base.product(w[0], w[1]).expect("member product");
            if aut.out_mul(classes[w[0] as usize], classes[w[1] as usize]) != classes[gh as usize] {
                return Err(Error::structural(format!(
                    "outer action is not multiplicative at {}",
                    base.fmt_word(w)
                )));
            }
        }
        Ok(OuterAction { classes })
    }

    pub fn trivial(base: &PartialGroup) -> Self {
        OuterAction { classes: vec![0; base.size()] }
    }

    pub fn class(&self, g: Letter) -> usize {
        self.classes[g as usize]
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    /// The `rank`-th least automorphism in each class (falling back to the
    /// least when a class is smaller), with the identity at the unit.
    pub fn lift(&self, aut: &AutData, rank: usize) -> Vec<usize> {
        self.classes
            .iter()
            .enumerate()
            .map(|(g, &c)| {
                if g == UNIT as usize {
                    0
                } else {
                    let members = &aut.out_classes()[c];
                    members[rank.min(members.len() - 1)]
                }
            })
            .collect()
    }

    /// Whether some non-unit class has a second member to lift to.
    pub fn has_alternative_lift(&self, aut: &AutData) -> bool {
        self.classes.iter().skip(1).any(|&c| aut.out_classes()[c].len() > 1)
    }
}

/// `g -> [t(g)]`, checked to be multiplicative.
pub fn induced_outer_action(pair: &TwistingPair) -> Result<OuterAction> {
    let aut = pair.fiber_aut();
    let classes = pair.base().elements().map(|g| aut.out_class(pair.twist(g))).collect();
    OuterAction::new(pair.base(), aut, classes)
}

/// Every outer action of `base` on the fiber of `aut`, in lexicographic
/// order of class lists.
pub fn all_outer_actions(base: &PartialGroup, aut: &AutData) -> Vec<OuterAction> {
    let mut out = Vec::new();
    let mut classes = vec![usize::MAX; base.size()];
    classes[0] = 0;
    fill(base, aut, &mut classes, 1, &mut out);
    out
}

fn fill(base: &PartialGroup, aut: &AutData, classes: &mut Vec<usize>, g: usize, out: &mut Vec<OuterAction>) {
    if g == base.size() {
        out.push(OuterAction { classes: classes.clone() });
        return;
    }
    for c in 0..aut.out_order() {
        classes[g] = c;
        if consistent(base, aut, classes, g as Letter) {
            fill(base, aut, classes, g + 1, out);
        }
    }
    classes[g] = usize::MAX;
}

fn consistent(base: &PartialGroup, aut: &AutData, classes: &[usize], g: Letter) -> bool {
    let known = |x: Letter| classes[x as usize] != usize::MAX;
    for a in base.elements().filter(|&a| known(a)) {
        for (l, r) in [(a, g), (g, a)] {
            let Some(p) = base.product(l, r) else { continue };
            if known(p) && aut.out_mul(classes[l as usize], classes[r as usize]) != classes[p as usize] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::maps::aut::automorphisms;
    use std::sync::Arc;

    #[test]
    fn counts_of_outer_actions() {
        let v4 = automorphisms(&Arc::new(catalog::bar_klein(4).unwrap())).unwrap();
        let z4 = automorphisms(&Arc::new(catalog::bar_cyclic(4, 4).unwrap())).unwrap();
        let h_v4 = catalog::bar_klein(4).unwrap();
        let h_z2 = catalog::bar_cyclic(2, 4).unwrap();
        // homomorphisms V4 -> S3 and Z2 -> S3, V4 -> Z2
        assert_eq!(all_outer_actions(&h_v4, &v4).len(), 10);
        assert_eq!(all_outer_actions(&h_z2, &v4).len(), 4);
        assert_eq!(all_outer_actions(&h_v4, &z4).len(), 4);
    }
}
