//! Automorphism groups by exhaustive search, with inner and outer parts.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::maps::hom::{check_isomorphism, compose};
use crate::maps::normalizer::{normalizer, Normalizer};
use crate::partial_group::PartialGroup;
use crate::word::{Letter, UNIT};

/// Default cap on the number of candidate bijections, `10!`.
pub const DEFAULT_AUT_CAP: u128 = 3_628_800;

/// Automorphisms of a partial group, sorted lexicographically by image
/// list, so index 0 is the identity.
#[derive(Debug, Clone)]
pub struct AutData {
    pg: Arc<PartialGroup>,
    perms: Vec<Vec<Letter>>,
    index: HashMap<Vec<Letter>, usize>,
    compose: Vec<usize>,
    inverse: Vec<usize>,
    normalizer: Normalizer,
    /// Automorphism index of each conjugation, aligned with the normalizer.
    inner: Vec<usize>,
    out_classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    out_mul: Vec<usize>,
}

pub fn automorphisms(pg: &Arc<PartialGroup>) -> Result<AutData> {
    automorphisms_with_cap(pg, DEFAULT_AUT_CAP)
}

pub fn automorphisms_with_cap(pg: &Arc<PartialGroup>, cap: u128) -> Result<AutData> {
    let perms = search(pg, cap)?;
    AutData::from_perms(pg.clone(), perms)
}

impl AutData {
    fn from_perms(pg: Arc<PartialGroup>, perms: Vec<Vec<Letter>>) -> Result<Self> {
        let n = perms.len();
        let index: HashMap<Vec<Letter>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let lookup = |p: &Vec<Letter>| {
            index.get(p).copied().ok_or_else(|| Error::internal("automorphisms not closed under composition"))
        };
        let mut comp = Vec::with_capacity(n * n);
        for a in &perms {
            for b in &perms {
                comp.push(lookup(&compose(a, b))?);
            }
        }
        let inverse = (0..n)
            .map(|i| (0..n).find(|&j| comp[i * n + j] == 0).ok_or_else(|| Error::internal("no inverse automorphism")))
            .collect::<Result<Vec<_>>>()?;

        let normalizer = normalizer(&pg);
        let inner = normalizer
            .conjugations
            .iter()
            .map(lookup)
            .collect::<Result<Vec<_>>>()?;
        let mut inn: Vec<usize> = inner.clone();
        inn.sort_unstable();
        inn.dedup();

        let mut class_of = vec![usize::MAX; n];
        let mut out_classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut coset: Vec<usize> = inn.iter().map(|&c| comp[a * n + c]).collect();
            coset.sort_unstable();
            coset.dedup();
            for &b in &coset {
                if class_of[b] != usize::MAX {
                    return Err(Error::internal("inner automorphisms do not form a normal subgroup"));
                }
                class_of[b] = out_classes.len();
            }
            out_classes.push(coset);
        }
        let k = out_classes.len();
        let mut out_mul = Vec::with_capacity(k * k);
        for a in &out_classes {
            for b in &out_classes {
                out_mul.push(class_of[comp[a[0] * n + b[0]]]);
            }
        }
        Ok(AutData { pg, perms, index, compose: comp, inverse, normalizer, inner, out_classes, class_of, out_mul })
    }

    pub fn partial_group(&self) -> &Arc<PartialGroup> {
        &self.pg
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, i: usize) -> &[Letter] {
        &self.perms[i]
    }

    pub fn perms(&self) -> &[Vec<Letter>] {
        &self.perms
    }

    pub fn apply(&self, i: usize, x: Letter) -> Letter {
        self.perms[i][x as usize]
    }

    pub fn index_of(&self, perm: &[Letter]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    /// Index of `perm(a) ∘ perm(b)`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.compose[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn normalizer(&self) -> &Normalizer {
        &self.normalizer
    }

    pub fn center(&self) -> &[Letter] {
        &self.normalizer.center
    }

    /// Automorphism index of conjugation by a normalizer element.
    pub fn inner(&self, eta: Letter) -> Option<usize> {
        self.normalizer.position(eta).map(|i| self.inner[i])
    }

    pub fn out_order(&self) -> usize {
        self.out_classes.len()
    }

    /// Outer classes, each a sorted list of automorphism indices; class 0
    /// holds the inner automorphisms. Classes are ordered by least member.
    pub fn out_classes(&self) -> &[Vec<usize>] {
        &self.out_classes
    }

    pub fn out_class(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn out_mul(&self, a: usize, b: usize) -> usize {
        self.out_mul[a * self.out_order() + b]
    }

    /// `|Aut|·|Z| = |N|·|Out|`.
    pub fn exactness_holds(&self) -> bool {
        self.order() * self.normalizer.center.len() == self.normalizer.order() * self.out_order()
    }

    /// Least `η ∈ N` with `c_η ∘ from = to`, if any.
    pub fn connecting_label(&self, to: usize, from: usize) -> Option<Letter> {
        let want = self.compose(to, self.inverse(from));
        self.normalizer
            .elements
            .iter()
            .zip(&self.inner)
            .find(|(_, &c)| c == want)
            .map(|(&x, _)| x)
    }
}

/// Invariants an automorphism must preserve, used to prune the search.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Signature {
    self_inverse: bool,
    order: usize,
    power_reach: usize,
    degree: usize,
}

fn signature(p: &PartialGroup, x: Letter) -> Signature {
    let mut order = 0;
    let mut power_reach = 1;
    for k in 2..=p.level() {
        let w = vec![x; k];
        if !p.contains_canonical(&w) {
            break;
        }
        power_reach = k;
        if order == 0 && p.fold(&w) == Some(UNIT) {
            order = k;
        }
    }
    let degree = p.letters().filter(|&y| p.product(x, y).is_some()).count();
    Signature { self_inverse: p.inv(x) == x, order, power_reach, degree }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}

fn search(p: &PartialGroup, cap: u128) -> Result<Vec<Vec<Letter>>> {
    let n = p.size();
    let sigs: Vec<Signature> = p.elements().map(|x| signature(p, x)).collect();
    let mut class_sizes: HashMap<&Signature, usize> = HashMap::new();
    for s in &sigs[1..] {
        *class_sizes.entry(s).or_default() += 1;
    }
    let size = class_sizes.values().fold(1u128, |acc, &k| acc.saturating_mul(factorial(k)));
    if size > cap {
        return Err(Error::Resource { what: "automorphism search".into(), size, cap });
    }
    // Pairs grouped by their product, for checking newly assigned products.
    let mut by_product: Vec<Vec<(Letter, Letter)>> = vec![Vec::new(); n];
    for a in p.letters() {
        for b in p.letters() {
            if let Some(c) = p.product(a, b) {
                by_product[c as usize].push((a, b));
            }
        }
    }
    let mut s = Search {
        p,
        sigs,
        by_product,
        image: vec![None; n],
        used: vec![false; n],
        found: Vec::new(),
    };
    s.image[0] = Some(UNIT);
    s.used[0] = true;
    s.dfs(1);
    Ok(s.found)
}

struct Search<'a> {
    p: &'a PartialGroup,
    sigs: Vec<Signature>,
    by_product: Vec<Vec<(Letter, Letter)>>,
    image: Vec<Option<Letter>>,
    used: Vec<bool>,
    found: Vec<Vec<Letter>>,
}

impl Search<'_> {
    fn dfs(&mut self, x: usize) {
        let n = self.p.size();
        if x == n {
            let perm: Vec<Letter> = self.image.iter().map(|y| y.expect("complete assignment")).collect();
            if check_isomorphism(&perm, self.p, self.p).is_ok() {
                self.found.push(perm);
            }
            return;
        }
        if self.image[x].is_some() {
            self.dfs(x + 1);
            return;
        }
        let xi = self.p.inv(x as Letter) as usize;
        for y in 1..n {
            if self.used[y] || self.sigs[x] != self.sigs[y] {
                continue;
            }
            let yi = self.p.inv(y as Letter) as usize;
            if (xi == x) != (yi == y) || (xi != x && self.used[yi]) {
                continue;
            }
            let mut fresh = vec![x];
            if xi != x {
                fresh.push(xi);
            }
            self.assign(x, y);
            if xi != x {
                self.assign(xi, yi);
            }
            if self.consistent(&fresh) {
                self.dfs(x + 1);
            }
            for &z in &fresh {
                let y = self.image[z].take().expect("assigned");
                self.used[y as usize] = false;
            }
        }
    }

    fn assign(&mut self, x: usize, y: usize) {
        self.image[x] = Some(y as Letter);
        self.used[y] = true;
    }

    fn consistent(&self, fresh: &[usize]) -> bool {
        let p = self.p;
        let f = |x: Letter| self.image[x as usize];
        for &x in fresh {
            let x = x as Letter;
            for a in p.letters() {
                let Some(fa) = f(a) else { continue };
                let fx = f(x).expect("fresh letter assigned");
                for (l, r, fl, fr) in [(a, x, fa, fx), (x, a, fx, fa)] {
                    let src = p.product(l, r);
                    let dst = p.product(fl, fr);
                    match (src, dst) {
                        (None, None) => {}
                        (Some(c), Some(d)) => {
                            if let Some(fc) = f(c) {
                                if fc != d {
                                    return false;
                                }
                            }
                        }
                        _ => return false,
                    }
                }
            }
            for &(a, b) in &self.by_product[x as usize] {
                if let (Some(fa), Some(fb)) = (f(a), f(b)) {
                    if p.product(fa, fb) != f(x) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
