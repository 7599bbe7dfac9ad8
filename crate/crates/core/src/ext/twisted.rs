//! The twisted product of a twisting pair and extensions built from it.
//!
//! Letters are pairs `(x, g)` of a fiber and a base element. A word
//! `[(x1,g1)..(xn,gn)]` is a member when `[g1..gn]` is a base member and
//! `[x1 | t(g1)(x2) | t(g1)t(g2)(x3) | ..]` is a fiber member. Products and
//! inverses are
//!
//! ```text
//! (x,g)(z,h) = (x·t(g)(z)·η(g,h), gh)
//! (x,g)⁻¹    = (η(g⁻¹,g)⁻¹·t(g⁻¹)(x⁻¹), g⁻¹)
//! ```

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ext::pair::TwistingPair;
use crate::maps::aut::AutData;
use crate::maps::hom::{check_homomorphism, check_isomorphism, Homomorphism};
use crate::partial_group::{PartialGroup, WordSet, NO_PRODUCT};
use crate::word::{Letter, Word, UNIT};

#[derive(Debug, Clone)]
pub struct Extension {
    pair: TwistingPair,
    total: Arc<PartialGroup>,
}

impl Extension {
    pub fn pair(&self) -> &TwistingPair {
        &self.pair
    }

    pub fn total(&self) -> &Arc<PartialGroup> {
        &self.total
    }

    pub fn fiber(&self) -> &Arc<PartialGroup> {
        self.pair.fiber()
    }

    pub fn fiber_aut(&self) -> &Arc<AutData> {
        self.pair.fiber_aut()
    }

    pub fn base(&self) -> &Arc<PartialGroup> {
        self.pair.base()
    }

    pub fn level(&self) -> usize {
        self.total.level()
    }

    pub fn encode(&self, x: Letter, g: Letter) -> Letter {
        g * self.fiber().size() as Letter + x
    }

    pub fn decode(&self, e: Letter) -> (Letter, Letter) {
        let nm = self.fiber().size() as Letter;
        (e % nm, e / nm)
    }

    /// Projection onto the base.
    pub fn tau(&self) -> Vec<Letter> {
        self.total.elements().map(|e| self.decode(e).1).collect()
    }

    /// Inclusion of the fiber, `x -> (x, 1)`.
    pub fn iota(&self) -> Vec<Letter> {
        self.fiber().elements().map(|x| self.encode(x, UNIT)).collect()
    }

    /// Checks that both `(x,g)⁻¹·(x,g)` and `(x,g)·(x,g)⁻¹` are the unit.
    pub fn check_inverse_law(&self) -> Result<()> {
        let e = &self.total;
        for x in e.letters() {
            let y = e.inv(x);
            if e.pi(&[y, x]) != Some(UNIT) || e.pi(&[x, y]) != Some(UNIT) {
                return Err(Error::internal(format!("inverse law fails at {}", e.name(x))));
            }
        }
        Ok(())
    }
}

fn pair_name(m: &PartialGroup, h: &PartialGroup, x: Letter, g: Letter) -> String {
    if x == UNIT && g == UNIT {
        "1".to_string()
    } else {
        format!("({},{})", m.name(x), h.name(g))
    }
}

/// Builds the total space and validates it; a validation failure is an
/// internal error since it would contradict the construction.
pub fn twisted_product(pair: &TwistingPair) -> Result<Extension> {
    let m = pair.fiber().clone();
    let h = pair.base().clone();
    let aut = pair.fiber_aut().clone();
    let (nm, nh) = (m.size(), h.size());
    let n = nm * nh;
    if n >= NO_PRODUCT as usize {
        return Err(Error::Resource { what: "twisted product".into(), size: n as u128, cap: NO_PRODUCT as u128 - 1 });
    }
    let level = m.level().min(h.level());
    let enc = |x: Letter, g: Letter| g * nm as Letter + x;

    let names = (0..nh as Letter)
        .flat_map(|g| (0..nm as Letter).map(move |x| (x, g)))
        .map(|(x, g)| pair_name(&m, &h, x, g))
        .collect();

    let mut inv = vec![UNIT; n];
    for g in h.elements() {
        let gi = h.inv(g);
        let tgi = pair.twist_perm(gi);
        let correction = m.inv(pair.eta(gi, g));
        for x in m.elements() {
            let y = m.pi(&[correction, tgi[m.inv(x) as usize]]).ok_or_else(|| {
                Error::internal(format!("inverse of {} undefined", pair_name(&m, &h, x, g)))
            })?;
            inv[enc(x, g) as usize] = enc(y, gi);
        }
    }

    let mut prod = vec![NO_PRODUCT; n * n];
    for g in h.elements() {
        for k in h.elements() {
            let Some(gk) = h.pi(&[g, k]) else { continue };
            let tg = pair.twist_perm(g);
            let label = pair.eta(g, k);
            for x in m.elements() {
                for z in m.elements() {
                    let Some(xz) = m.pi(&[x, tg[z as usize]]) else { continue };
                    let y = m.product(xz, label).ok_or_else(|| {
                        Error::internal(format!(
                            "product {} {} undefined",
                            pair_name(&m, &h, x, g),
                            pair_name(&m, &h, z, k)
                        ))
                    })?;
                    prod[enc(x, g) as usize * n + enc(z, k) as usize] = enc(y, gk);
                }
            }
        }
    }

    let mut domain: Vec<WordSet> = (0..=level).map(|_| WordSet::default()).collect();
    let mut walk = Walk { m: &m, h: &h, aut: &aut, pair, nm, level, domain: &mut domain };
    walk.extend(&mut Word::empty(), &Word::empty(), &Word::empty(), 0);

    let total = PartialGroup::from_raw(names, inv, level, domain, prod, m.is_complete() && h.is_complete());
    let report = total.validate();
    if let Some(v) = report.first() {
        return Err(Error::internal(format!(
            "twisted product fails validation: {} at {}: {}",
            v.axiom,
            total.fmt_word(&v.word),
            v.detail
        )));
    }
    let ext = Extension { pair: pair.clone(), total: Arc::new(total) };
    ext.check_inverse_law()?;
    Ok(ext)
}

/// Depth-first enumeration of total words in lexicographic order, carrying
/// the canonical base word, the twisted fiber word and the accumulated twist.
struct Walk<'a> {
    m: &'a PartialGroup,
    h: &'a PartialGroup,
    aut: &'a AutData,
    pair: &'a TwistingPair,
    nm: usize,
    level: usize,
    domain: &'a mut Vec<WordSet>,
}

impl Walk<'_> {
    fn extend(&mut self, word: &mut Word, base: &Word, fiber: &Word, twist: usize) {
        if word.len() == self.level {
            return;
        }
        for e in 1..(self.nm * self.h.size()) as Letter {
            let (x, g) = (e % self.nm as Letter, e / self.nm as Letter);
            let mut b = base.clone();
            if g != UNIT {
                b.push(g);
                if !self.h.contains_canonical(&b) {
                    continue;
                }
            }
            let mut f = fiber.clone();
            let tx = self.aut.apply(twist, x);
            if tx != UNIT {
                f.push(tx);
                if !self.m.contains_canonical(&f) {
                    continue;
                }
            }
            word.push(e);
            if word.len() >= 2 {
                self.domain[word.len()].insert(word.clone());
            }
            let next = self.aut.compose(twist, self.pair.twist(g));
            self.extend(word, &b, &f, next);
            word.pop();
        }
    }
}

/// Semidirect product: the pair `(ρ, 1)` for a twist `ρ` that is
/// multiplicative on length-2 base words.
pub fn semidirect(base: Arc<PartialGroup>, fiber: Arc<AutData>, rho: Vec<usize>) -> Result<Extension> {
    if rho.len() != base.size() {
        return Err(Error::Validation("action has the wrong number of entries".into()));
    }
    if rho[UNIT as usize] != 0 {
        return Err(Error::structural("action does not send 1 to the identity"));
    }
    for w in base.words_of_len(2) {
        let gk = base.product(w[0], w[1]).expect("member product");
        if fiber.compose(rho[w[0] as usize], rho[w[1] as usize]) != rho[gk as usize] {
            return Err(Error::structural(format!("action is not multiplicative at {}", base.fmt_word(w))));
        }
    }
    let pair = TwistingPair::new(base, fiber, rho, [])?;
    let ext = twisted_product(&pair)?;
    canonical_section(&ext)?;
    Ok(ext)
}

/// The section `g -> (1, g)` of a semidirect product.
pub fn canonical_section(ext: &Extension) -> Result<Homomorphism> {
    let map: Vec<Letter> = ext.base().elements().map(|g| ext.encode(UNIT, g)).collect();
    check_homomorphism(&map, ext.base(), ext.total())
        .map_err(|w| Error::internal(format!("canonical section fails: {w}")))
}

/// Presents an abstract partial group `total` with a fiber inclusion, a
/// projection and a set-theoretic section as a twisted product, and checks
/// the coordinate map `(x, g) -> ι(x)·s(g)` is an isomorphism onto `total`.
pub fn recognize_extension(
    total: &PartialGroup,
    base: Arc<PartialGroup>,
    fiber: Arc<AutData>,
    iota: &[Letter],
    tau: &[Letter],
    section: &[Letter],
) -> Result<Extension> {
    let m = fiber.partial_group().clone();
    let bad = |what: &str| Error::structural(format!("cannot recognise extension: {what}"));
    check_homomorphism(iota, &m, total).map_err(|w| bad(&format!("inclusion: {w}")))?;
    check_homomorphism(tau, total, &base).map_err(|w| bad(&format!("projection: {w}")))?;
    if section.len() != base.size() || section[0] != UNIT {
        return Err(bad("section must fix the unit"));
    }
    if base.elements().any(|g| tau[section[g as usize] as usize] != g) {
        return Err(bad("section is not a right inverse of the projection"));
    }
    if m.elements().any(|x| tau[iota[x as usize] as usize] != UNIT) {
        return Err(bad("inclusion does not land in the kernel"));
    }
    let mut back = vec![None; total.size()];
    for (x, &e) in iota.iter().enumerate() {
        back[e as usize] = Some(x as Letter);
    }
    let from_fiber = |e: Option<Letter>| e.and_then(|e| back[e as usize]);
    let sec = |g: Letter| section[g as usize];

    let twist = base
        .elements()
        .map(|g| {
            let s = sec(g);
            let perm = m
                .elements()
                .map(|y| from_fiber(total.pi(&Word::from([s, iota[y as usize], total.inv(s)]).canonical())))
                .collect::<Option<Vec<Letter>>>()
                .ok_or_else(|| bad("conjugation by a section value leaves the fiber"))?;
            fiber.index_of(&perm).ok_or_else(|| bad("conjugation is not a fiber automorphism"))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut eta = Vec::new();
    for w in base.words_of_len(2) {
        let gk = base.product(w[0], w[1]).expect("member product");
        let word = Word::from([sec(w[0]), sec(w[1]), total.inv(sec(gk))]).canonical();
        let x = from_fiber(total.pi(&word)).ok_or_else(|| bad("section defect leaves the fiber"))?;
        eta.push(((w[0], w[1]), x));
    }
    let pair = TwistingPair::new(base.clone(), fiber, twist, eta)?;
    let ext = twisted_product(&pair)?;
    let coords = ext
        .total()
        .elements()
        .map(|e| {
            let (x, g) = ext.decode(e);
            total.pi(&Word::from([iota[x as usize], sec(g)]).canonical())
        })
        .collect::<Option<Vec<Letter>>>()
        .ok_or_else(|| bad("coordinate map undefined"))?;
    check_isomorphism(&coords, ext.total(), total).map_err(|w| bad(&format!("coordinate map: {w}")))?;
    Ok(ext)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::{bar_construction, GroupTable};
    use crate::maps::aut::automorphisms;

    #[test]
    fn direct_product_of_z2s() {
        let h = Arc::new(catalog::bar_cyclic(2, 5).unwrap());
        let m = Arc::new(automorphisms(&Arc::new(catalog::bar_cyclic(2, 5).unwrap())).unwrap());
        let ext = semidirect(h, m, vec![0, 0]).unwrap();
        assert_eq!(ext.total().size(), 4);
        // every unit-free word over three letters
        assert_eq!(ext.total().domain_sizes(), vec![1, 3, 9, 27, 81, 243]);
        assert_eq!(ext.total().names(), &["1", "(a,1)", "(1,a)", "(a,a)"]);
    }

    #[test]
    fn z4_is_recognised_over_z2() {
        let z4 = bar_construction(&GroupTable::cyclic(4), 5).unwrap();
        let h = Arc::new(catalog::bar_cyclic(2, 5).unwrap());
        let m = Arc::new(automorphisms(&Arc::new(catalog::bar_cyclic(2, 5).unwrap())).unwrap());
        let ext = recognize_extension(&z4, h, m, &[0, 2], &[0, 1, 0, 1], &[0, 1]).unwrap();
        assert_eq!(ext.pair().eta(1, 1), 1);
    }

    #[test]
    fn amalgam_twisted_by_swap() {
        let m = Arc::new(automorphisms(&Arc::new(catalog::amalgam(5).unwrap())).unwrap());
        let h = Arc::new(catalog::bar_cyclic(2, 5).unwrap());
        let ext = semidirect(h, m, vec![0, 1]).unwrap();
        let e = ext.total();
        // (a,1)(1,g) and (1,g)(b,1) are both defined; (a,1)(b,1) is not.
        let (a, b, g) = (ext.encode(1, 0), ext.encode(2, 0), ext.encode(0, 1));
        assert!(e.member(&[a, g, b]));
        assert!(!e.member(&[a, b]));
        assert_eq!(e.pi(&[g, a, e.inv(g)]), Some(b));
    }

    #[test]
    fn semidirect_product_follows_the_action() {
        let h = Arc::new(catalog::bar_cyclic(2, 4).unwrap());
        let m = Arc::new(automorphisms(&Arc::new(catalog::bar_cyclic(3, 4).unwrap())).unwrap());
        let ext = semidirect(h.clone(), m.clone(), vec![0, 1]).unwrap();
        let fiber = m.partial_group();
        for (g, k) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for x in fiber.elements() {
                for z in fiber.elements() {
                    let lhs = ext.total().pi(&[ext.encode(x, g), ext.encode(z, k)]);
                    let xz = fiber.pi(&[x, m.apply(if g == 1 { 1 } else { 0 }, z)]).unwrap();
                    assert_eq!(lhs, Some(ext.encode(xz, h.pi(&[g, k]).unwrap())));
                }
            }
        }
    }

    #[test]
    fn trivial_pair_over_a_genuinely_partial_fiber() {
        let m = Arc::new(automorphisms(&Arc::new(catalog::amalgam(4).unwrap())).unwrap());
        let h = Arc::new(catalog::bar_symmetric3(4).unwrap());
        let pair = TwistingPair::new(h.clone(), m, vec![0; h.size()], []).unwrap();
        let ext = twisted_product(&pair).unwrap();
        assert_eq!(ext.total().size(), 18);
    }
}
