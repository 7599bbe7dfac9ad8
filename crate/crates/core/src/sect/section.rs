use crate::error::{Error, Result};
use crate::ext::twisted::Extension;
use crate::maps::hom::check_homomorphism;
use crate::maps::homotopy::check_homotopy;
use crate::util::UnionFind;
use crate::word::{Letter, UNIT};

pub const DEFAULT_SECTION_CAP: u128 = 1 << 24;

/// A section `g -> (θ(g), g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub theta: Vec<Letter>,
    /// The section as a map of letters into the total space.
    pub sigma: Vec<Letter>,
    /// Whether every `θ(g)` lies in the fiber normalizer.
    pub regular: bool,
}

impl Section {
    pub(crate) fn from_theta(ext: &Extension, theta: Vec<Letter>) -> Self {
        let sigma = theta.iter().enumerate().map(|(g, &x)| ext.encode(x, g as Letter)).collect();
        let n = ext.fiber_aut().normalizer();
        let regular = theta.iter().all(|&x| n.contains(x));
        Section { theta, sigma, regular }
    }
}

pub fn find_sections(ext: &Extension) -> Result<Vec<Section>> {
    find_sections_with_cap(ext, DEFAULT_SECTION_CAP)
}

/// Every section, in lexicographic order of `θ`.
pub fn find_sections_with_cap(ext: &Extension, cap: u128) -> Result<Vec<Section>> {
    let h = ext.base();
    let e = ext.total();
    let nm = ext.fiber().size();
    let size = (nm as u128).saturating_pow(h.size().saturating_sub(1) as u32);
    if size > cap {
        return Err(Error::Resource { what: "section search".into(), size, cap });
    }
    let pairs: Vec<(Letter, Letter, Letter)> = h
        .words_of_len(2)
        .iter()
        .map(|w| (w[0], w[1], h.product(w[0], w[1]).expect("member product")))
        .collect();
    let mut theta = vec![UNIT; h.size()];
    let mut out = Vec::new();
    search(ext, &pairs, &mut theta, 1, &mut out);
    let mut sections = Vec::new();
    for theta in out {
        let s = Section::from_theta(ext, theta);
        if check_homomorphism(&s.sigma, h, e).is_ok() {
            sections.push(s);
        }
    }
    Ok(sections)
}

fn search(ext: &Extension, pairs: &[(Letter, Letter, Letter)], theta: &mut Vec<Letter>, g: usize, out: &mut Vec<Vec<Letter>>) {
    if g == theta.len() {
        out.push(theta.clone());
        return;
    }
    let e = ext.total();
    for x in ext.fiber().elements() {
        theta[g] = x;
        let consistent = pairs.iter().filter(|&&(a, b, c)| a.max(b).max(c) as usize <= g).all(|&(a, b, c)| {
            let s = |k: Letter| ext.encode(theta[k as usize], k);
            e.product(s(a), s(b)) == Some(s(c))
        });
        if consistent {
            search(ext, pairs, theta, g + 1, out);
        }
    }
    theta[g] = UNIT;
}

/// Classes of sections under the relation generated by fiber-labelled
/// homotopies `σ <-ι(y)- σ'`, each class listed by position in `sections`.
pub fn section_classes(ext: &Extension, sections: &[Section]) -> Vec<Vec<usize>> {
    let h = ext.base();
    let e = ext.total();
    let mut uf = UnionFind::new(sections.len());
    for i in 0..sections.len() {
        for j in i + 1..sections.len() {
            if uf.find(i) == uf.find(j) {
                continue;
            }
            let linked = ext
                .fiber()
                .elements()
                .any(|y| check_homotopy(&sections[i].sigma, &sections[j].sigma, ext.encode(y, UNIT), h, e).is_ok());
            if linked {
                uf.union(i, j);
            }
        }
    }
    uf.classes()
}
