//! The nerve of the automorphism category: objects are automorphisms and a
//! morphism `α <-η- β` is a normalizer element with `α = c_η ∘ β`. The
//! nerve is a simplicial group under composition of automorphisms.

use crate::error::{Error, Result};
use crate::maps::aut::AutData;
use crate::structure::{abelian_invariants, describe};
use crate::util::advance;
use crate::word::{Letter, UNIT};

/// A chain `α0 <-η1- α1 <- ... <-ηn- αn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub objects: Vec<usize>,
    pub labels: Vec<Letter>,
}

impl Chain {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(dim: usize) -> Chain {
        Chain { objects: vec![0; dim + 1], labels: vec![UNIT; dim] }
    }

    pub fn check(&self, aut: &AutData) -> Result<()> {
        if self.objects.len() != self.labels.len() + 1 {
            return Err(Error::internal("chain has mismatched objects and labels"));
        }
        for (i, &eta) in self.labels.iter().enumerate() {
            let ok = aut.inner(eta).map(|c| aut.compose(c, self.objects[i + 1]) == self.objects[i]);
            if ok != Some(true) {
                return Err(Error::structural(format!("link {i} of the chain is not a morphism")));
            }
        }
        Ok(())
    }

    pub fn face(&self, i: usize, aut: &AutData) -> Result<Chain> {
        let n = self.dim();
        if i > n || n == 0 {
            return Err(Error::IndexOutOfRange { index: i, size: n + 1 });
        }
        let mut objects = self.objects.clone();
        let mut labels = self.labels.clone();
        objects.remove(i);
        if i == 0 {
            labels.remove(0);
        } else if i == n {
            labels.pop();
        } else {
            let joined = n_mul(aut, labels[i - 1], labels[i])?;
            labels[i - 1] = joined;
            labels.remove(i);
        }
        Ok(Chain { objects, labels })
    }

    pub fn degeneracy(&self, i: usize) -> Result<Chain> {
        if i > self.dim() {
            return Err(Error::IndexOutOfRange { index: i, size: self.dim() + 1 });
        }
        let mut c = self.clone();
        c.objects.insert(i, self.objects[i]);
        c.labels.insert(i, UNIT);
        Ok(c)
    }

    /// Componentwise product: objects compose and labels combine as
    /// `η·α(ζ)` with `α` the source object of the left link.
    pub fn mul(&self, other: &Chain, aut: &AutData) -> Result<Chain> {
        if self.dim() != other.dim() {
            return Err(Error::internal("multiplying chains of different dimension"));
        }
        let objects = self.objects.iter().zip(&other.objects).map(|(&a, &b)| aut.compose(a, b)).collect();
        let labels = (0..self.dim())
            .map(|i| n_mul(aut, self.labels[i], aut.apply(self.objects[i + 1], other.labels[i])))
            .collect::<Result<_>>()?;
        Ok(Chain { objects, labels })
    }
}

fn n_mul(aut: &AutData, a: Letter, b: Letter) -> Result<Letter> {
    aut.partial_group()
        .product(a, b)
        .ok_or_else(|| Error::internal("normalizer elements without a product"))
}

/// Labels of all morphisms `to <-η- from`.
pub fn morphisms(aut: &AutData, to: usize, from: usize) -> Vec<Letter> {
    let want = aut.compose(to, aut.inverse(from));
    aut.normalizer()
        .elements
        .iter()
        .copied()
        .filter(|&eta| aut.inner(eta) == Some(want))
        .collect()
}

/// All `n`-simplices of the nerve, sorted.
pub fn aut_nerve(aut: &AutData, n: usize, cap: u128) -> Result<Vec<Chain>> {
    let nsize = aut.normalizer().order() as u128;
    let size = (aut.order() as u128).saturating_mul(nsize.saturating_pow(n as u32));
    if size > cap {
        return Err(Error::Resource { what: "nerve enumeration".into(), size, cap });
    }
    let elems = &aut.normalizer().elements;
    let mut out = Vec::with_capacity(size as usize);
    for last in 0..aut.order() {
        let mut idx = vec![0usize; n];
        loop {
            let labels: Vec<Letter> = idx.iter().map(|&i| elems[i]).collect();
            let mut objects = vec![last; n + 1];
            for i in (0..n).rev() {
                let c = aut.inner(labels[i]).expect("normalizer element");
                objects[i] = aut.compose(c, objects[i + 1]);
            }
            out.push(Chain { objects, labels });
            if !advance(&mut idx, elems.len()) {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// A morphism `to <-label- from` of the automorphism category.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub to: usize,
    pub label: Letter,
    pub from: usize,
}

/// `(α <-η- β) ⊗ (α' <-η'- β') = (α∘α' <-η·β(η')- β∘β')`, checking that the
/// label also equals `α(η')·η`.
pub fn tensor(aut: &AutData, left: Arrow, right: Arrow) -> Result<Arrow> {
    let a = n_mul(aut, left.label, aut.apply(left.from, right.label))?;
    let b = n_mul(aut, aut.apply(left.to, right.label), left.label)?;
    if a != b {
        return Err(Error::structural("tensor labels disagree"));
    }
    let out = Arrow { to: aut.compose(left.to, right.to), label: a, from: aut.compose(left.from, right.from) };
    if aut.inner(a).map(|c| aut.compose(c, out.from)) != Some(out.to) {
        return Err(Error::structural("tensor is not a morphism"));
    }
    Ok(out)
}

/// Action of a 1-simplex on a letter: `(α0 <-η- α1)·[x] = [η·α1(x)]`.
pub fn act_on_letter(aut: &AutData, arrow: Arrow, x: Letter) -> Option<Letter> {
    aut.partial_group().pi(&[arrow.label, aut.apply(arrow.from, x)])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiReport {
    pub pi0_order: usize,
    pub pi0: String,
    pub pi1_order: usize,
    pub pi1: String,
    pub pi1_invariants: Vec<u64>,
}

/// Components are outer classes and the loops at the identity are the centre.
pub fn pi_report(aut: &AutData) -> PiReport {
    let pi0 = describe(aut.out_order(), |a, b| aut.out_mul(a, b));
    let center = aut.center();
    let pg = aut.partial_group();
    let pos = |x: Letter| center.binary_search(&x).expect("centre is closed");
    let zmul = |a: usize, b: usize| pos(pg.product(center[a], center[b]).expect("centre product"));
    let pi1_invariants = abelian_invariants(center.len(), zmul).unwrap_or_default();
    PiReport {
        pi0_order: aut.out_order(),
        pi0,
        pi1_order: center.len(),
        pi1: describe(center.len(), zmul),
        pi1_invariants,
    }
}
