//! Twisting pairs `(t, η)`: a twist `t` from base letters to automorphisms
//! of the fiber, and labels `η(g,h)` in the fiber normalizer for each
//! length-2 base word, such that
//!
//! * `η(g,h)` is a homotopy `t(g)∘t(h) <-η(g,h)- t(gh)`,
//! * `t(1) = id` and `η` is 1 whenever either argument is 1,
//! * `t(g)(η(h,k))·η(g,hk) = η(g,h)·η(gh,k)` on every length-3 base word.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::maps::aut::AutData;
use crate::maps::homotopy::check_homotopy;
use crate::partial_group::PartialGroup;
use crate::word::{Letter, Word, UNIT};

#[derive(Debug, Clone)]
pub struct TwistingPair {
    base: Arc<PartialGroup>,
    fiber: Arc<AutData>,
    t: Vec<usize>,
    eta: Vec<Letter>,
}

impl TwistingPair {
    /// Builds and validates a pair. `eta` lists `((g, h), label)` entries for
    /// length-2 base words; missing entries default to the unit.
    pub fn new(
        base: Arc<PartialGroup>,
        fiber: Arc<AutData>,
        t: Vec<usize>,
        eta: impl IntoIterator<Item = ((Letter, Letter), Letter)>,
    ) -> Result<Self> {
        let pair = Self::new_unchecked(base, fiber, t, eta)?;
        pair.validate()?;
        Ok(pair)
    }

    /// Builds a pair checking only table shapes, so that broken pairs can be
    /// fed to diagnostics.
    pub fn new_unchecked(
        base: Arc<PartialGroup>,
        fiber: Arc<AutData>,
        t: Vec<usize>,
        eta: impl IntoIterator<Item = ((Letter, Letter), Letter)>,
    ) -> Result<Self> {
        let nh = base.size();
        let nm = fiber.partial_group().size();
        if t.len() != nh {
            return Err(Error::Validation(format!("twist has {} entries, base has {nh} elements", t.len())));
        }
        if let Some(&bad) = t.iter().find(|&&a| a >= fiber.order()) {
            return Err(Error::IndexOutOfRange { index: bad, size: fiber.order() });
        }
        let mut table = vec![UNIT; nh * nh];
        for ((g, h), x) in eta {
            for (v, size) in [(g, nh), (h, nh), (x, nm)] {
                if v as usize >= size {
                    return Err(Error::IndexOutOfRange { index: v as usize, size });
                }
            }
            if g == UNIT || h == UNIT {
                if x != UNIT {
                    return Err(Error::Validation(format!(
                        "label on ({}, {}) must be 1",
                        base.name(g),
                        base.name(h)
                    )));
                }
                continue;
            }
            if !base.contains_canonical(&[g, h]) {
                return Err(Error::Validation(format!(
                    "label given for non-member [{}|{}]",
                    base.name(g),
                    base.name(h)
                )));
            }
            table[g as usize * nh + h as usize] = x;
        }
        Ok(TwistingPair { base, fiber, t, eta: table })
    }

    pub fn base(&self) -> &Arc<PartialGroup> {
        &self.base
    }

    pub fn fiber_aut(&self) -> &Arc<AutData> {
        &self.fiber
    }

    pub fn fiber(&self) -> &Arc<PartialGroup> {
        self.fiber.partial_group()
    }

    pub fn twist(&self, g: Letter) -> usize {
        self.t[g as usize]
    }

    pub fn twists(&self) -> &[usize] {
        &self.t
    }

    pub fn twist_perm(&self, g: Letter) -> &[Letter] {
        self.fiber.perm(self.t[g as usize])
    }

    pub fn eta(&self, g: Letter, h: Letter) -> Letter {
        self.eta[g as usize * self.base.size() + h as usize]
    }

    /// Non-unit labels in base word order.
    pub fn eta_entries(&self) -> Vec<((Letter, Letter), Letter)> {
        self.base
            .words_of_len(2)
            .iter()
            .map(|w| ((w[0], w[1]), self.eta(w[0], w[1])))
            .filter(|&(_, x)| x != UNIT)
            .collect()
    }

    /// Same twist with labels replaced.
    pub fn with_eta(&self, eta: impl IntoIterator<Item = ((Letter, Letter), Letter)>) -> Result<Self> {
        Self::new(self.base.clone(), self.fiber.clone(), self.t.clone(), eta)
    }

    fn mul(&self, a: Letter, b: Letter) -> Result<Letter> {
        let m = self.fiber();
        m.product(a, b).ok_or_else(|| {
            Error::Validation(format!("product {} {} undefined in the fiber", m.name(a), m.name(b)))
        })
    }

    pub fn validate(&self) -> Result<()> {
        let h = &self.base;
        let m = self.fiber();
        let aut = &self.fiber;
        let fail = |what: &str, w: &[Letter]| Err(Error::Validation(format!("{what} at {}", h.fmt_word(w))));
        if self.t[UNIT as usize] != 0 {
            return fail("t(1) is not the identity", &[]);
        }
        let n = aut.normalizer();
        let mut verified: HashSet<(usize, usize, Letter)> = HashSet::new();
        for w in h.words_of_len(2) {
            let (g, k) = (w[0], w[1]);
            let label = self.eta(g, k);
            if !n.contains(label) {
                return Err(Error::Validation(format!(
                    "label {} at {} is not in the fiber normalizer",
                    m.name(label),
                    h.fmt_word(w)
                )));
            }
            let gk = h.product(g, k).expect("length-2 member has a product");
            let to = aut.compose(self.twist(g), self.twist(k));
            let from = self.twist(gk);
            if aut.inner(label).map(|c| aut.compose(c, from)) != Some(to) {
                return fail("t(g)∘t(h) is not conjugate to t(gh) by the label", w);
            }
            if verified.insert((to, from, label))
                && check_homotopy(aut.perm(to), aut.perm(from), label, m, m).is_err()
            {
                return fail("label is not a homotopy t(g)∘t(h) <- t(gh)", w);
            }
        }
        for w in h.words_of_len(3) {
            let (g, k, l) = (w[0], w[1], w[2]);
            let gk = h.product(g, k).expect("subword product");
            let kl = h.product(k, l).expect("subword product");
            let lhs = self.mul(aut.apply(self.twist(g), self.eta(k, l)), self.eta(g, kl))?;
            let rhs = self.mul(self.eta(g, k), self.eta(gk, l))?;
            if lhs != rhs {
                return fail("cocycle condition fails", w);
            }
        }
        Ok(())
    }

    /// Cocycle defect `η(g,h)·η(gh,k)·η(g,hk)⁻¹·t(g)(η(h,k))⁻¹` on a
    /// length-3 base word; the unit exactly when the cocycle condition holds.
    pub fn cocycle_defect(&self, w: &[Letter]) -> Result<Letter> {
        let h = &self.base;
        let m = self.fiber();
        let (g, k, l) = (w[0], w[1], w[2]);
        let gk = h.product(g, k).ok_or_else(|| Error::internal("base word without product"))?;
        let kl = h.product(k, l).ok_or_else(|| Error::internal("base word without product"))?;
        let a = self.mul(self.eta(g, k), self.eta(gk, l))?;
        let b = self.mul(a, m.inv(self.eta(g, kl)))?;
        let twisted = self.fiber.apply(self.twist(g), self.eta(k, l));
        self.mul(b, m.inv(twisted))
    }

    /// Non-unit labels as `[g|h]:x`, or `-` when there are none.
    pub fn fmt_eta(&self) -> String {
        let m = self.fiber();
        let entries = self.eta_entries();
        if entries.is_empty() {
            return "-".into();
        }
        entries
            .iter()
            .map(|&((g, h), x)| format!("{}:{}", self.base.fmt_word(&Word::from([g, h])), m.name(x)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}
