//! Rewriting a string of homotopies between sections so that every
//! intermediate map is a section and every label lies in the fiber.

use crate::error::{Error, Result};
use crate::ext::twisted::Extension;
use crate::maps::hom::check_homomorphism;
use crate::maps::homotopy::check_homotopy;
use crate::word::{Letter, UNIT};

/// `maps[0] <-labels[0]- maps[1] <-labels[1]- ... <- maps[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyChain {
    pub maps: Vec<Vec<Letter>>,
    pub labels: Vec<Letter>,
}

impl HomotopyChain {
    pub fn check(&self, ext: &Extension) -> Result<()> {
        if self.maps.len() != self.labels.len() + 1 {
            return Err(Error::Validation("a chain needs one more map than labels".into()));
        }
        let (h, e) = (ext.base(), ext.total());
        for (i, f) in self.maps.iter().enumerate() {
            check_homomorphism(f, h, e).map_err(|w| Error::Validation(format!("map {i} is not a homomorphism: {w}")))?;
        }
        for (i, &x) in self.labels.iter().enumerate() {
            check_homotopy(&self.maps[i], &self.maps[i + 1], x, h, e)
                .map_err(|w| Error::Validation(format!("step {i} is not a homotopy: {w}")))?;
        }
        Ok(())
    }

    pub fn is_section(ext: &Extension, f: &[Letter]) -> bool {
        f.iter().enumerate().all(|(g, &e)| ext.decode(e).1 == g as Letter)
    }

    /// Whether every map is a section and every label a fiber element.
    pub fn is_normal(&self, ext: &Extension) -> bool {
        self.maps.iter().all(|f| Self::is_section(ext, f)) && self.labels.iter().all(|&x| ext.decode(x).1 == UNIT)
    }
}

/// Walks the chain left to right. At step `i`, with `g = τ(x_i)⁻¹` and
/// `s = σ_i(g)`, the label `x_i` becomes `x_i·s`, the next map is conjugated
/// by `s` so that it is a section, and the next label becomes `s⁻¹·x_(i+1)`.
/// On the last step the final section stays put; `g` is then central on the
/// image of `τ` and `x·σ_n(g)` is already a homotopy. Every intermediate
/// chain is checked.
pub fn normalize_homotopy_chain(ext: &Extension, chain: &HomotopyChain) -> Result<HomotopyChain> {
    chain.check(ext)?;
    let n = chain.labels.len();
    if !HomotopyChain::is_section(ext, &chain.maps[0]) || !HomotopyChain::is_section(ext, &chain.maps[n]) {
        return Err(Error::Validation("chain endpoints must be sections".into()));
    }
    let h = ext.base();
    let e = ext.total();
    let mut out = chain.clone();
    for i in 0..n {
        let x = out.labels[i];
        let g = h.inv(ext.decode(x).1);
        if g == UNIT {
            continue;
        }
        if i + 1 == n {
            let s = out.maps[n][g as usize];
            out.labels[i] = e.product(x, s).ok_or_else(|| Error::internal("x·σ(g) is undefined"))?;
        } else {
            let s = out.maps[i][g as usize];
            let x2 = e.product(x, s).ok_or_else(|| Error::internal("x·σ(g) is undefined"))?;
            let to = &out.maps[i];
            // the unique lift u of each base element with x2·u = σ_i(k)·x2
            let next = h
                .elements()
                .map(|k| {
                    let want = e.product(to[k as usize], x2);
                    ext.fiber()
                        .elements()
                        .map(|y| ext.encode(y, k))
                        .find(|&u| want.is_some() && e.product(x2, u) == want)
                        .ok_or_else(|| Error::internal(format!("no conjugate of σ({}) by the new label", h.name(k))))
                })
                .collect::<Result<Vec<_>>>()?;
            out.labels[i + 1] = e
                .product(e.inv(s), out.labels[i + 1])
                .ok_or_else(|| Error::internal("s⁻¹·x is undefined"))?;
            out.labels[i] = x2;
            out.maps[i + 1] = next;
        }
        out.check(ext).map_err(|err| Error::internal(format!("rewriting step {i} broke the chain: {err}")))?;
    }
    if !out.is_normal(ext) {
        return Err(Error::internal("rewritten chain is not in fiber-label form"));
    }
    Ok(out)
}
