use crate::error::{Error, Result};
use crate::ext::twisted::Extension;
use crate::maps::hom::check_isomorphism;
use crate::util::advance;
use crate::word::{Letter, UNIT};

pub const DEFAULT_EQUIV_CAP: u128 = 1 << 24;

/// An equivalence `(x, g) -> (x·θ(g), g)` between two extensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub theta: Vec<Letter>,
    pub map: Vec<Letter>,
}

/// Searches `θ` with `θ(1) = 1` in lexicographic order and returns the first
/// for which `(x, g) -> (x·θ(g), g)` is an isomorphism of total spaces. Such
/// a map commutes with the fiber inclusions and the projections by shape.
pub fn find_equivalence(a: &Extension, b: &Extension) -> Result<Option<Equivalence>> {
    find_equivalence_with_cap(a, b, DEFAULT_EQUIV_CAP)
}

pub fn find_equivalence_with_cap(a: &Extension, b: &Extension, cap: u128) -> Result<Option<Equivalence>> {
    if a.fiber() != b.fiber() || a.base() != b.base() || a.level() != b.level() {
        return Err(Error::structural("extensions have different fibers, bases or levels"));
    }
    let m = a.fiber();
    let h = a.base();
    let (nm, nh) = (m.size(), h.size());
    let size = (nm as u128).saturating_pow(nh.saturating_sub(1) as u32);
    if size > cap {
        return Err(Error::Resource { what: "equivalence search".into(), size, cap });
    }
    let ta = a.total();
    let tb = b.total();
    let mut digits = vec![0usize; nh - 1];
    loop {
        let theta: Vec<Letter> =
            std::iter::once(UNIT).chain(digits.iter().map(|&d| d as Letter)).collect();
        if let Some(map) = coordinate_map(a, &theta) {
            // Cheap rejection on length-2 products before the full check.
            let quick = ta.words_of_len(2).iter().all(|w| {
                let (x, y) = (map[w[0] as usize], map[w[1] as usize]);
                let p = ta.product(w[0], w[1]).expect("member product");
                tb.product(x, y) == Some(map[p as usize])
            });
            if quick && check_isomorphism(&map, ta, tb).is_ok() {
                return Ok(Some(Equivalence { theta, map }));
            }
        }
        if !advance(&mut digits, nm) {
            return Ok(None);
        }
    }
}

fn coordinate_map(ext: &Extension, theta: &[Letter]) -> Option<Vec<Letter>> {
    let m = ext.fiber();
    ext.total()
        .elements()
        .map(|e| {
            let (x, g) = ext.decode(e);
            m.pi(&[x, theta[g as usize]]).map(|y| ext.encode(y, g))
        })
        .collect()
}
