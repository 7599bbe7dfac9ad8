//! The part of an extension lying over the fiber normalizer, and the group
//! extension of normalizers it induces.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ext::pair::TwistingPair;
use crate::ext::twisted::{twisted_product, Extension};
use crate::group::{bar_construction, GroupTable};
use crate::maps::aut::automorphisms;
use crate::maps::hom::check_homomorphism;
use crate::maps::normalizer::normalizer;
use crate::word::{Letter, UNIT};

#[derive(Debug, Clone)]
pub struct NormalizerSubextension {
    /// Extension of the base by the bar construction of the fiber normalizer.
    pub ext: Extension,
    /// Embedding of its total space into the ambient total space.
    pub embedding: Vec<Letter>,
}

/// Letters `(x, g)` with `x` in the fiber normalizer, presented as a twisted
/// product with fiber `B(N(M))`, together with a check that its image is
/// exactly the part of the ambient domain spelled in those letters.
pub fn normalizer_subextension(ext: &Extension) -> Result<NormalizerSubextension> {
    let m = ext.fiber();
    let n = ext.fiber_aut().normalizer().clone();
    let pos = |x: Letter| n.position(x).map(|i| i as Letter);
    let mut mul = Vec::with_capacity(n.order() * n.order());
    for &a in &n.elements {
        for &b in &n.elements {
            let p = m.product(a, b).and_then(pos).ok_or_else(|| Error::internal("normalizer is not closed"))?;
            mul.push(p);
        }
    }
    let names = n.elements.iter().map(|&x| m.name(x).to_string()).collect();
    let group = GroupTable::new(names, mul).map_err(|e| Error::internal(format!("normalizer table: {e}")))?;
    let bn = Arc::new(bar_construction(&group, ext.level())?);
    let bn_aut = Arc::new(automorphisms(&bn)?);

    let pair = ext.pair();
    let twist = ext
        .base()
        .elements()
        .map(|g| {
            let perm = n
                .elements
                .iter()
                .map(|&x| pos(pair.fiber_aut().apply(pair.twist(g), x)))
                .collect::<Option<Vec<Letter>>>()
                .ok_or_else(|| Error::internal("twist does not preserve the normalizer"))?;
            bn_aut.index_of(&perm).ok_or_else(|| Error::internal("restricted twist is not an automorphism"))
        })
        .collect::<Result<Vec<_>>>()?;
    let eta = pair
        .eta_entries()
        .into_iter()
        .map(|(gh, x)| pos(x).map(|y| (gh, y)).ok_or_else(|| Error::internal("label outside the normalizer")))
        .collect::<Result<Vec<_>>>()?;
    let sub_pair = TwistingPair::new(ext.base().clone(), bn_aut, twist, eta)?;
    let sub = twisted_product(&sub_pair)?;

    let embedding: Vec<Letter> = sub
        .total()
        .elements()
        .map(|e| {
            let (x, g) = sub.decode(e);
            ext.encode(n.elements[x as usize], g)
        })
        .collect();
    check_homomorphism(&embedding, sub.total(), ext.total())
        .map_err(|w| Error::internal(format!("normalizer subextension does not embed: {w}")))?;
    let in_n = |e: Letter| n.contains(ext.decode(e).0);
    for len in 2..=ext.level() {
        let expected = ext.total().words_of_len(len).iter().filter(|w| w.iter().all(|&e| in_n(e))).count();
        if expected != sub.total().words_of_len(len).len() {
            return Err(Error::internal(format!("normalizer subextension misses words of length {len}")));
        }
    }
    Ok(NormalizerSubextension { ext: sub, embedding })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizerExtension {
    pub fiber: Vec<Letter>,
    pub total: Vec<Letter>,
    pub base: Vec<Letter>,
    pub exact: bool,
}

/// `N(M) -> N(E) -> N(H)`: checks the inclusion lands in `N(E)`, the
/// projection maps `N(E)` onto `N(H)`, and the kernel is the fiber part.
pub fn n_group_extension(ext: &Extension) -> Result<NormalizerExtension> {
    let nm = ext.fiber_aut().normalizer().clone();
    let ne = normalizer(ext.total());
    let nh = normalizer(ext.base());
    for &x in &nm.elements {
        if !ne.contains(ext.encode(x, UNIT)) {
            return Err(Error::structural(format!(
                "fiber normalizer element {} is not in the total normalizer",
                ext.fiber().name(x)
            )));
        }
    }
    let mut image: Vec<Letter> = ne.elements.iter().map(|&e| ext.decode(e).1).collect();
    image.sort_unstable();
    image.dedup();
    if image != nh.elements {
        return Err(Error::structural("projection of the total normalizer is not the base normalizer"));
    }
    let kernel: Vec<Letter> =
        ne.elements.iter().copied().filter(|&e| ext.decode(e).1 == UNIT).map(|e| ext.decode(e).0).collect();
    if kernel != nm.elements {
        return Err(Error::structural("kernel of the projection is not the fiber normalizer"));
    }
    Ok(NormalizerExtension {
        fiber: nm.elements,
        total: ne.elements,
        base: nh.elements,
        exact: nm.exact && ne.exact && nh.exact,
    })
}

/// Conjugation by a letter `(x, g)` with `x` in the fiber normalizer:
/// `y -> x·t(g)(y)·x⁻¹`, as a fiber automorphism index. Checked against the
/// total space wherever the conjugating word is a member.
pub fn conjugation_action(ext: &Extension, letter: Letter) -> Result<usize> {
    let (x, g) = ext.decode(letter);
    let aut = ext.fiber_aut();
    let cx = aut.inner(x).ok_or_else(|| Error::structural("fiber coordinate is not in the normalizer"))?;
    let act = aut.compose(cx, ext.pair().twist(g));
    let e = ext.total();
    let li = e.inv(letter);
    for y in ext.fiber().elements() {
        let w = [letter, ext.encode(y, UNIT), li];
        if let Some(p) = e.pi(&w) {
            if p != ext.encode(aut.apply(act, y), UNIT) {
                return Err(Error::internal(format!("conjugation by {} disagrees at {}", e.name(letter), e.name(w[1]))));
            }
        }
    }
    Ok(act)
}
