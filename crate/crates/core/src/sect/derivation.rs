//! Derivations `θ: H -> M` for an action `ρ` of `H` on `M`, written `ʰx`.
//!
//! In dimension `n`, `θ[h1|..|hn] = [θ(h1) | ʰ¹θ(h2) | ʰ¹ʰ²θ(h3) | ..]`. The
//! face identities amount to that word being a member for every member
//! `[h1|..|hn]`, and to `θ(gh) = θ(g)·ᵍθ(h)` on the inner faces.

use crate::error::{Error, Result};
use crate::maps::aut::AutData;
use crate::maps::hom::Witness;
use crate::partial_group::PartialGroup;
use crate::util::{advance, UnionFind};
use crate::word::{Letter, Word, UNIT};

const DERIVATION_CAP: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub theta: Vec<Letter>,
    pub regular: bool,
}

/// `ρ(h1···hk)` for each prefix of `w`, starting from the identity.
fn prefix_actions(base: &PartialGroup, rho: &[usize], w: &[Letter]) -> Vec<usize> {
    let mut out = Vec::with_capacity(w.len() + 1);
    out.push(0);
    let mut acc = UNIT;
    for &h in w {
        acc = base.product(acc, h).expect("prefix of a member has a product");
        out.push(rho[acc as usize]);
    }
    out
}

fn expand(base: &PartialGroup, aut: &AutData, rho: &[usize], theta: &[Letter], w: &[Letter]) -> Word {
    let pre = prefix_actions(base, rho, w);
    w.iter().enumerate().map(|(j, &h)| aut.apply(pre[j], theta[h as usize])).collect()
}

pub(crate) fn check_action(base: &PartialGroup, aut: &AutData, rho: &[usize]) -> Result<()> {
    if rho.len() != base.size() || rho[UNIT as usize] != 0 {
        return Err(Error::Validation("action must have one entry per base element and fix 1".into()));
    }
    for w in base.words_of_len(2) {
        let gh = base.product(w[0], w[1]).expect("member product");
        if aut.compose(rho[w[0] as usize], rho[w[1] as usize]) != rho[gh as usize] {
            return Err(Error::structural(format!("action is not multiplicative at {}", base.fmt_word(w))));
        }
    }
    Ok(())
}

/// Checks the word condition and the product identity on every stored base
/// word, returning the first failure.
pub fn check_derivation(base: &PartialGroup, aut: &AutData, rho: &[usize], theta: &[Letter]) -> Result<(), Witness> {
    let m = aut.partial_group();
    if theta[UNIT as usize] != UNIT {
        return Err(Witness { word: Word::single(UNIT), detail: "θ(1) must be 1".into() });
    }
    for w in base.stored_words() {
        let u = expand(base, aut, rho, theta, w);
        let Some(p) = m.pi(&u) else {
            return Err(Witness { word: w.clone(), detail: format!("{} is not a fiber member", m.fmt_word(&u)) });
        };
        let whole = base.pi(w).expect("stored word");
        if p != theta[whole as usize] {
            return Err(Witness {
                word: w.clone(),
                detail: format!("product {} differs from θ of the product {}", m.name(p), m.name(theta[whole as usize])),
            });
        }
    }
    Ok(())
}

/// Every derivation, in lexicographic order of `θ`.
pub fn derivations(base: &PartialGroup, aut: &AutData, rho: &[usize]) -> Result<Vec<Derivation>> {
    check_action(base, aut, rho)?;
    let m = aut.partial_group();
    let nh = base.size();
    let size = (m.size() as u128).saturating_pow(nh.saturating_sub(1) as u32);
    if size > DERIVATION_CAP {
        return Err(Error::Resource { what: "derivation search".into(), size, cap: DERIVATION_CAP });
    }
    let n = aut.normalizer();
    let mut digits = vec![0usize; nh - 1];
    let mut out = Vec::new();
    loop {
        let theta: Vec<Letter> = std::iter::once(UNIT).chain(digits.iter().map(|&d| d as Letter)).collect();
        // the length-2 identity first, as a cheap filter
        let quick = base.words_of_len(2).iter().all(|w| {
            let (g, h) = (w[0], w[1]);
            let gh = base.product(g, h).expect("member product");
            m.product(theta[g as usize], aut.apply(rho[g as usize], theta[h as usize])) == Some(theta[gh as usize])
        });
        if quick && check_derivation(base, aut, rho, &theta).is_ok() {
            let regular = theta.iter().all(|&x| n.contains(x));
            out.push(Derivation { theta, regular });
        }
        if !advance(&mut digits, m.size()) {
            return Ok(out);
        }
    }
}

/// Whether `y` witnesses `θ ~ θ'`: for every stored base word `[h1|..|hn]`
/// with `n < level`, each
///
/// ```text
/// v_k = [θ(h1) | .. | ʰ¹···ʰᵏ⁻¹θ(hk) | ʰ¹···ʰᵏy | ʰ¹···ʰᵏθ'(hk+1) | .. | ʰ¹···ʰⁿ⁻¹θ'(hn)]
/// ```
///
/// is a fiber member and all have the same product.
pub fn check_derivation_equivalence(
    base: &PartialGroup,
    aut: &AutData,
    rho: &[usize],
    theta: &[Letter],
    theta2: &[Letter],
    y: Letter,
) -> bool {
    let m = aut.partial_group();
    // y·θ'(h) = θ(h)·ʰy on letters, a necessary condition
    let quick = base.letters().all(|h| {
        let lhs = m.product(y, theta2[h as usize]);
        lhs.is_some() && lhs == m.product(theta[h as usize], aut.apply(rho[h as usize], y))
    });
    if !quick {
        return false;
    }
    for w in base.words_up_to(base.level() - 1) {
        let n = w.len();
        let pre = prefix_actions(base, rho, &w);
        let mut product = None;
        for k in 0..=n {
            let mut v = Word::empty();
            for j in 0..k {
                v.push(aut.apply(pre[j], theta[w[j] as usize]));
            }
            v.push(aut.apply(pre[k], y));
            for j in k..n {
                v.push(aut.apply(pre[j], theta2[w[j] as usize]));
            }
            let Some(p) = m.pi(&v) else { return false };
            if *product.get_or_insert(p) != p {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct NonabelianH1 {
    pub derivations: Vec<Derivation>,
    /// Classes by position in `derivations`, ordered by least member.
    pub classes: Vec<Vec<usize>>,
}

impl NonabelianH1 {
    pub fn class_of(&self, i: usize) -> usize {
        self.classes.iter().position(|c| c.contains(&i)).expect("every derivation is in a class")
    }
}

/// Derivations modulo the relation generated by one-step equivalences.
pub fn h1_nonabelian(base: &PartialGroup, aut: &AutData, rho: &[usize]) -> Result<NonabelianH1> {
    let ders = derivations(base, aut, rho)?;
    let m = aut.partial_group();
    let mut uf = UnionFind::new(ders.len());
    for i in 0..ders.len() {
        for j in i + 1..ders.len() {
            if uf.find(i) == uf.find(j) {
                continue;
            }
            if m.elements().any(|y| check_derivation_equivalence(base, aut, rho, &ders[i].theta, &ders[j].theta, y)) {
                uf.union(i, j);
            }
        }
    }
    Ok(NonabelianH1 { derivations: ders, classes: uf.classes() })
}
