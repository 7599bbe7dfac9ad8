use std::fmt;

use crate::partial_group::PartialGroup;
use crate::word::{Letter, Word, UNIT};

/// Why a map failed a check: the first offending source word, in domain
/// order, and a short explanation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub word: Word,
    pub detail: String,
}

impl Witness {
    pub(crate) fn new(word: impl Into<Word>, detail: impl Into<String>) -> Self {
        Witness { word: word.into(), detail: detail.into() }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.word, self.detail)
    }
}

/// An element map that has been checked to be a homomorphism between the
/// pair of partial groups it was checked against.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    map: Vec<Letter>,
}

impl Homomorphism {
    pub fn map(&self) -> &[Letter] {
        &self.map
    }

    pub fn apply(&self, x: Letter) -> Letter {
        self.map[x as usize]
    }

    pub fn into_map(self) -> Vec<Letter> {
        self.map
    }
}

pub fn apply_word(map: &[Letter], w: &[Letter]) -> Word {
    w.iter().map(|&x| map[x as usize]).collect()
}

/// `outer ∘ inner` as element maps.
pub fn compose(outer: &[Letter], inner: &[Letter]) -> Vec<Letter> {
    inner.iter().map(|&x| outer[x as usize]).collect()
}

pub fn identity_map(n: usize) -> Vec<Letter> {
    (0..n as Letter).collect()
}

/// Checks that `map` sends the unit to the unit, commutes with inversion,
/// and sends every stored source word that fits under the target level to a
/// target member with the image product.
pub fn check_homomorphism(
    map: &[Letter],
    source: &PartialGroup,
    target: &PartialGroup,
) -> Result<Homomorphism, Witness> {
    if map.len() != source.size() {
        return Err(Witness::new(Word::empty(), format!("map has {} entries, source has {}", map.len(), source.size())));
    }
    if let Some(x) = map.iter().position(|&y| y as usize >= target.size()) {
        return Err(Witness::new([x as Letter], "image out of range"));
    }
    if map[0] != UNIT {
        return Err(Witness::new(Word::empty(), "unit not preserved"));
    }
    for x in source.letters() {
        if map[source.inv(x) as usize] != target.inv(map[x as usize]) {
            return Err(Witness::new([x], "does not commute with inversion"));
        }
    }
    let top = source.level().min(target.level());
    for n in 2..=top {
        for w in source.words_of_len(n) {
            let image = apply_word(map, w).canonical();
            if !target.contains_canonical(&image) {
                return Err(Witness::new(w.clone(), format!("image {} is not a member", target.fmt_word(&image))));
            }
            let expected = source.fold(w).map(|p| map[p as usize]);
            if target.fold(&image) != expected {
                return Err(Witness::new(w.clone(), "product not preserved"));
            }
        }
    }
    Ok(Homomorphism { map: map.to_vec() })
}

/// Homomorphism that is a bijection on elements and on stored words.
pub fn check_isomorphism(
    map: &[Letter],
    source: &PartialGroup,
    target: &PartialGroup,
) -> Result<Homomorphism, Witness> {
    if source.size() != target.size() || source.level() != target.level() {
        return Err(Witness::new(Word::empty(), "sizes or levels differ"));
    }
    let mut hit = vec![false; target.size()];
    for (x, &y) in map.iter().enumerate() {
        if (y as usize) < hit.len() {
            if hit[y as usize] {
                return Err(Witness::new([x as Letter], "map is not injective"));
            }
            hit[y as usize] = true;
        }
    }
    if source.domain_sizes() != target.domain_sizes() {
        return Err(Witness::new(Word::empty(), "domains have different sizes"));
    }
    // An injective simplicial map between domains of equal finite size is a
    // bijection on simplices.
    check_homomorphism(map, source, target)
}
