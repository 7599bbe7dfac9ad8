//! Regular split extensions: the action and isomorphism a regular section
//! determines, and the section-derivation correspondence.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ext::twisted::{semidirect, Extension};
use crate::maps::hom::check_isomorphism;
use crate::sect::derivation::{check_action, check_derivation, Derivation, NonabelianH1};
use crate::sect::section::Section;
use crate::util::advance;
use crate::word::{Letter, UNIT};

const SPLIT_SEARCH_CAP: u128 = 1 << 24;

/// `η(g,h) = t(g)(θ(h)⁻¹)·θ(g)⁻¹·θ(gh)` on one length-2 word, with the
/// products taken in the fiber normalizer.
fn split_equation_holds(ext: &Extension, theta: &[Letter], g: Letter, h: Letter) -> bool {
    let m = ext.fiber();
    let pair = ext.pair();
    let gh = ext.base().product(g, h).expect("member product");
    let a = ext.fiber_aut().apply(pair.twist(g), m.inv(theta[h as usize]));
    m.pi(&[a, m.inv(theta[g as usize]), theta[gh as usize]]) == Some(pair.eta(g, h))
}

#[derive(Debug, Clone)]
pub struct RegularSplit {
    /// `ρ(g) = c_θ(g) ∘ t(g)`, as fiber automorphism indices.
    pub rho: Vec<usize>,
    pub semidirect: Extension,
    /// `φ(x, g) = (x·θ(g), g)` from the semidirect product to the extension.
    pub phi: Vec<Letter>,
}

/// The semidirect product and isomorphism determined by a regular section.
pub fn regular_split_normalize(ext: &Extension, section: &Section) -> Result<RegularSplit> {
    if !section.regular {
        return Err(Error::structural("section is not regular"));
    }
    let aut = ext.fiber_aut();
    let pair = ext.pair();
    let theta = &section.theta;
    let rho = ext
        .base()
        .elements()
        .map(|g| {
            let c = aut.inner(theta[g as usize]).ok_or_else(|| Error::internal("regular value without conjugation"))?;
            Ok(aut.compose(c, pair.twist(g)))
        })
        .collect::<Result<Vec<_>>>()?;
    check_action(ext.base(), aut, &rho).map_err(|e| Error::internal(format!("induced action: {e}")))?;
    for w in ext.base().words_of_len(2) {
        if !split_equation_holds(ext, theta, w[0], w[1]) {
            return Err(Error::internal(format!("labels disagree with the section at {}", ext.base().fmt_word(w))));
        }
    }
    let s = semidirect(ext.base().clone(), aut.clone(), rho.clone())?;
    let m = ext.fiber();
    let phi = s
        .total()
        .elements()
        .map(|e| {
            let (x, g) = s.decode(e);
            let y = m.product(x, theta[g as usize]).ok_or_else(|| Error::internal("x·θ(g) is undefined"))?;
            Ok(ext.encode(y, g))
        })
        .collect::<Result<Vec<_>>>()?;
    check_isomorphism(&phi, s.total(), ext.total())
        .map_err(|w| Error::internal(format!("φ is not an isomorphism: {w}")))?;
    for g in ext.base().elements() {
        if phi[s.encode(UNIT, g) as usize] != section.sigma[g as usize] {
            return Err(Error::internal("φ does not carry the canonical section to the given one"));
        }
    }
    Ok(RegularSplit { rho, semidirect: s, phi })
}

/// Least `θ: H -> N(M)` with `θ(1) = 1` solving the split equation on every
/// length-2 base word, if any.
pub fn regular_section_obstruction(ext: &Extension) -> Result<Option<Vec<Letter>>> {
    let n = ext.fiber_aut().normalizer();
    let nh = ext.base().size();
    let size = (n.order() as u128).saturating_pow(nh.saturating_sub(1) as u32);
    if size > SPLIT_SEARCH_CAP {
        return Err(Error::Resource { what: "regular section search".into(), size, cap: SPLIT_SEARCH_CAP });
    }
    let pairs: Vec<(Letter, Letter)> = ext.base().words_of_len(2).iter().map(|w| (w[0], w[1])).collect();
    let mut digits = vec![0usize; nh - 1];
    loop {
        let theta: Vec<Letter> = std::iter::once(UNIT).chain(digits.iter().map(|&d| n.elements[d])).collect();
        if pairs.iter().all(|&(g, h)| split_equation_holds(ext, &theta, g, h)) {
            return Ok(Some(theta));
        }
        if !advance(&mut digits, n.order()) {
            return Ok(None);
        }
    }
}

fn semidirect_action(ext: &Extension) -> Result<Vec<usize>> {
    let pair = ext.pair();
    if !pair.eta_entries().is_empty() {
        return Err(Error::structural("extension is not presented as a semidirect product"));
    }
    Ok(pair.twists().to_vec())
}

/// The fiber coordinate of a section of a semidirect product.
pub fn section_to_derivation(ext: &Extension, section: &Section) -> Result<Derivation> {
    let rho = semidirect_action(ext)?;
    check_derivation(ext.base(), ext.fiber_aut(), &rho, &section.theta)
        .map_err(|w| Error::Validation(format!("θ is not a derivation: {w}")))?;
    let n = ext.fiber_aut().normalizer();
    Ok(Derivation { theta: section.theta.clone(), regular: section.theta.iter().all(|&x| n.contains(x)) })
}

/// `g -> (θ(g), g)` for a derivation of the action of a semidirect product.
pub fn derivation_to_section(ext: &Extension, theta: &[Letter]) -> Result<Section> {
    let rho = semidirect_action(ext)?;
    check_derivation(ext.base(), ext.fiber_aut(), &rho, theta)
        .map_err(|w| Error::Validation(format!("θ is not a derivation: {w}")))?;
    let s = Section::from_theta(ext, theta.to_vec());
    crate::maps::hom::check_homomorphism(&s.sigma, ext.base(), ext.total())
        .map_err(|w| Error::internal(format!("derivation does not give a section: {w}")))?;
    Ok(s)
}

/// Checks that `σ -> φ⁻¹∘σ -> θ` maps the sections of `ext` bijectively
/// onto the derivations of `h1`, and section classes bijectively onto its
/// classes. Returns, per section class, the matching derivation class.
pub fn h1_correspondence(
    ext: &Extension,
    split: &RegularSplit,
    sections: &[Section],
    classes: &[Vec<usize>],
    h1: &NonabelianH1,
) -> Result<Vec<usize>> {
    if split.phi.len() != ext.total().size() {
        return Err(Error::Validation("split does not belong to this extension".into()));
    }
    let mut phi_inv = vec![UNIT; split.phi.len()];
    for (a, &b) in split.phi.iter().enumerate() {
        phi_inv[b as usize] = a as Letter;
    }
    let s = &split.semidirect;
    let mut seen = HashSet::new();
    let mut derivation_of = Vec::with_capacity(sections.len());
    for sec in sections {
        let pulled: Vec<Letter> = sec.sigma.iter().map(|&e| phi_inv[e as usize]).collect();
        let theta: Vec<Letter> = pulled.iter().map(|&e| s.decode(e).0).collect();
        let d = section_to_derivation(s, &Section::from_theta(s, theta.clone()))?;
        let back = derivation_to_section(s, &d.theta)?;
        if back.sigma != pulled || d.regular != sec.regular {
            return Err(Error::internal("section and derivation do not round-trip"));
        }
        let idx = h1
            .derivations
            .iter()
            .position(|x| x.theta == theta)
            .ok_or_else(|| Error::internal("section has no matching derivation"))?;
        if !seen.insert(idx) {
            return Err(Error::internal("two sections give the same derivation"));
        }
        derivation_of.push(idx);
    }
    if seen.len() != h1.derivations.len() {
        return Err(Error::internal("some derivation has no section"));
    }
    let mut image = Vec::with_capacity(classes.len());
    for class in classes {
        let ids: HashSet<usize> = class.iter().map(|&i| h1.class_of(derivation_of[i])).collect();
        if ids.len() != 1 {
            return Err(Error::internal("a section class meets several derivation classes"));
        }
        image.push(*ids.iter().next().expect("nonempty"));
    }
    let distinct: HashSet<usize> = image.iter().copied().collect();
    if distinct.len() != image.len() || image.len() != h1.classes.len() {
        return Err(Error::internal("section classes and derivation classes are not in bijection"));
    }
    Ok(image)
}
