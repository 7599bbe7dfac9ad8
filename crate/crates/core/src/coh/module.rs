//! The fiber center as a coefficient module.
//!
//! This is the one place where multiplicative center elements meet additive
//! vectors: `encode` sends a central letter to its coordinates over the
//! invariant-factor basis, `decode` goes back. Everything downstream of the
//! codec is written additively.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::maps::aut::AutData;
use crate::structure::abelian_invariants;
use crate::util::advance_mixed;
use crate::word::Letter;

const BASIS_SEARCH_CAP: u128 = 1 << 20;

#[derive(Debug, Clone)]
pub struct CoefficientModule {
    aut: Arc<AutData>,
    /// Invariant factors `d1 | d2 | ...`, each at least 2.
    factors: Vec<u64>,
    /// Fiber letters generating each cyclic factor.
    basis: Vec<Letter>,
    /// Coordinates of every fiber letter, `None` off the center.
    coords: Vec<Option<Vec<u64>>>,
    /// Letter for each coordinate vector, in mixed-radix order.
    letters: Vec<Letter>,
    /// Per outer class, `action[c][i]` = coordinates of the image of `basis[i]`.
    action: Vec<Vec<Vec<u64>>>,
}

impl CoefficientModule {
    pub fn new(aut: Arc<AutData>) -> Result<Self> {
        let m = aut.partial_group().clone();
        let center = aut.center().to_vec();
        let pos = |x: Letter| center.iter().position(|&c| c == x);
        let mul = |a: usize, b: usize| {
            let p = m.product(center[a], center[b]).expect("center products are defined");
            pos(p).expect("center is closed")
        };
        let factors = abelian_invariants(center.len(), mul).ok_or_else(|| Error::internal("center is not abelian"))?;

        let power = |x: usize, k: u64| (0..k).fold(0usize, |acc, _| mul(acc, x));
        let order = |x: usize| (1..=center.len() as u64).find(|&k| power(x, k) == 0).unwrap_or(0);
        let candidates: Vec<Vec<usize>> =
            factors.iter().map(|&d| (0..center.len()).filter(|&x| order(x) == d).collect()).collect();
        if candidates.iter().any(|c| c.is_empty()) {
            return Err(Error::internal("center has no element of an invariant-factor order"));
        }
        let space: u128 = candidates.iter().map(|c| c.len() as u128).product();
        if space > BASIS_SEARCH_CAP {
            return Err(Error::Resource { what: "center basis search".into(), size: space, cap: BASIS_SEARCH_CAP });
        }
        let bases: Vec<usize> = factors.iter().map(|&d| d as usize).collect();
        let combine = |chosen: &[usize], x: &[usize]| {
            chosen.iter().zip(x).fold(0usize, |acc, (&b, &k)| mul(acc, power(b, k as u64)))
        };
        let mut pick = vec![0usize; factors.len()];
        let choice_bases: Vec<usize> = candidates.iter().map(|c| c.len()).collect();
        let basis = 'search: loop {
            let chosen: Vec<usize> = pick.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
            let mut seen = vec![false; center.len()];
            let mut x = vec![0usize; factors.len()];
            let mut injective = true;
            loop {
                let y = combine(&chosen, &x);
                if std::mem::replace(&mut seen[y], true) {
                    injective = false;
                    break;
                }
                if !advance_mixed(&mut x, &bases) {
                    break;
                }
            }
            if injective {
                break 'search chosen;
            }
            if !advance_mixed(&mut pick, &choice_bases) {
                return Err(Error::internal("no basis for the center"));
            }
        };

        let mut coords = vec![None; m.size()];
        let mut letters = Vec::with_capacity(center.len());
        let mut x = vec![0usize; factors.len()];
        loop {
            let letter = center[combine(&basis, &x)];
            coords[letter as usize] = Some(x.iter().map(|&k| k as u64).collect());
            letters.push(letter);
            if !advance_mixed(&mut x, &bases) {
                break;
            }
        }
        let basis: Vec<Letter> = basis.into_iter().map(|i| center[i]).collect();

        let n = aut.normalizer();
        for &eta in &n.elements {
            let c = aut.inner(eta).ok_or_else(|| Error::internal("normalizer element without conjugation"))?;
            if let Some(&z) = center.iter().find(|&&z| aut.apply(c, z) != z) {
                return Err(Error::structural(format!(
                    "conjugation by {} moves central element {}",
                    m.name(eta),
                    m.name(z)
                )));
            }
        }
        let mut action = Vec::with_capacity(aut.out_order());
        for class in aut.out_classes() {
            let a = class[0];
            let images = basis
                .iter()
                .map(|&b| coords[aut.apply(a, b) as usize].clone().ok_or_else(|| Error::internal("automorphism leaves the center")))
                .collect::<Result<Vec<_>>>()?;
            action.push(images);
        }
        Ok(CoefficientModule { aut, factors, basis, coords, letters, action })
    }

    pub fn fiber_aut(&self) -> &Arc<AutData> {
        &self.aut
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Number of elements.
    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Least common multiple of the factors.
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn basis(&self) -> &[Letter] {
        &self.basis
    }

    pub fn encode(&self, x: Letter) -> Result<Vec<u64>> {
        self.coords
            .get(x as usize)
            .cloned()
            .flatten()
            .ok_or_else(|| Error::structural(format!("{} is not central", self.aut.partial_group().name(x))))
    }

    pub fn decode(&self, v: &[u64]) -> Letter {
        let idx = v.iter().zip(&self.factors).fold(0u64, |acc, (&x, &d)| acc * d + x % d);
        self.letters[idx as usize]
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn is_zero(&self, v: &[u64]) -> bool {
        v.iter().zip(&self.factors).all(|(&x, &d)| x % d == 0)
    }

    /// Image of `v` under an outer class.
    pub fn act(&self, class: usize, v: &[u64]) -> Vec<u64> {
        let images = &self.action[class];
        self.factors
            .iter()
            .enumerate()
            .map(|(j, &d)| v.iter().zip(images).map(|(&x, img)| x * img[j]).sum::<u64>() % d)
            .collect()
    }

    /// `action_entry(c, j, i)`: coordinate `j` of the image of basis element `i`.
    pub fn action_entry(&self, class: usize, j: usize, i: usize) -> u64 {
        self.action[class][i][j]
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.factors).map(|((&x, &y), &d)| (x + y) % d).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::word::UNIT;
    use crate::maps::aut::automorphisms;

    #[test]
    fn codec_round_trips() {
        for pg in [catalog::bar_klein(4).unwrap(), catalog::bar_cyclic(4, 4).unwrap(), catalog::bar_dihedral8(4).unwrap()] {
            let aut = Arc::new(automorphisms(&Arc::new(pg)).unwrap());
            let module = CoefficientModule::new(aut.clone()).unwrap();
            assert_eq!(module.order() as usize, aut.center().len());
            for &z in aut.center() {
                assert_eq!(module.decode(&module.encode(z).unwrap()), z);
            }
            assert_eq!(module.decode(&module.zero()), UNIT);
        }
    }

    #[test]
    fn inversion_acts_by_negation() {
        let aut = Arc::new(automorphisms(&Arc::new(catalog::bar_cyclic(3, 4).unwrap())).unwrap());
        let module = CoefficientModule::new(aut).unwrap();
        assert_eq!(module.factors(), &[3]);
        assert_eq!(module.act(1, &[1]), vec![2]);
    }
}
