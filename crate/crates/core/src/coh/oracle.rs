//! Cohomology by enumerating every cochain. Coboundaries are evaluated face by
//! face from the module action, independently of the differential matrices.

use std::collections::HashSet;

use crate::coh::complex::{Cochain, CochainComplex, Cohomology};
use crate::error::Result;
use crate::util::advance_mixed;

/// Largest cochain group the oracle will enumerate.
pub const ORACLE_LIMIT: u128 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub degree: usize,
    pub cochains: u128,
    pub cocycles: u128,
    pub coboundaries: u128,
    /// `(k, |{h in Hⁿ : k·h = 0}|)` for every `k` dividing the exponent.
    pub torsion: Vec<(u64, u128)>,
}

impl OracleReport {
    pub fn order(&self) -> u128 {
        self.cocycles / self.coboundaries
    }

    pub fn agrees_with(&self, h: &Cohomology) -> bool {
        h.degree == self.degree
            && h.order() == self.order()
            && self.torsion.iter().all(|&(k, count)| h.torsion(k) == count)
    }
}

fn coboundary_direct(complex: &CochainComplex, n: usize, f: &[u64]) -> Result<Cochain> {
    let base = complex.base();
    let module = complex.module();
    let r = module.rank();
    let mut out = complex.zero(n + 1);
    for (u_idx, u) in complex.basis(n + 1).iter().enumerate() {
        let mut acc = module.zero();
        for k in 0..=n + 1 {
            let face = base.face(u, k)?.canonical();
            let Some(mut v) = (face.len() == n).then(|| complex.value(f, &face)).flatten() else {
                continue;
            };
            if k == 0 {
                v = module.act(complex.alpha().class(u[0]), &v);
            }
            if k % 2 == 1 {
                v = v.iter().zip(module.factors()).map(|(&x, &d)| (d - x % d) % d).collect();
            }
            acc = module.add(&acc, &v);
        }
        out[u_idx * r..(u_idx + 1) * r].copy_from_slice(&acc);
    }
    Ok(out)
}

fn all_cochains(complex: &CochainComplex, n: usize) -> impl Iterator<Item = Cochain> + '_ {
    let bases: Vec<usize> = (0..complex.dim(n)).map(|k| complex.modulus(k) as usize).collect();
    let mut digits = Some(vec![0usize; bases.len()]);
    std::iter::from_fn(move || {
        let current = digits.take()?;
        let mut next = current.clone();
        if advance_mixed(&mut next, &bases) {
            digits = Some(next);
        }
        Some(current.into_iter().map(|x| x as u64).collect())
    })
}

/// `Hⁿ` by enumeration, or `None` when `|Cⁿ|` exceeds [`ORACLE_LIMIT`] or the
/// complex has no differential out of degree `n`.
pub fn brute_force_cohomology(complex: &CochainComplex, n: usize) -> Result<Option<OracleReport>> {
    let cochains = complex.cochain_count(n);
    if cochains > ORACLE_LIMIT || n >= complex.top() {
        return Ok(None);
    }
    let mut cocycles = Vec::new();
    for f in all_cochains(complex, n) {
        if complex.is_zero(n + 1, &coboundary_direct(complex, n, &f)?) {
            cocycles.push(f);
        }
    }
    let mut boundaries: HashSet<Cochain> = HashSet::new();
    boundaries.insert(complex.zero(n));
    if n > 0 {
        let mut generators = Vec::new();
        for k in 0..complex.dim(n - 1) {
            let mut unit = complex.zero(n - 1);
            unit[k] = 1;
            generators.push(coboundary_direct(complex, n - 1, &unit)?);
        }
        let mut frontier = vec![complex.zero(n)];
        while let Some(b) = frontier.pop() {
            for g in &generators {
                let s = complex.add(&b, g);
                if boundaries.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
    }
    let exponent = complex.module().exponent().max(1);
    let torsion = (1..=exponent)
        .filter(|k| exponent % k == 0)
        .map(|k| {
            let killed = cocycles.iter().filter(|z| boundaries.contains(&complex.scale(k, z))).count() as u128;
            (k, killed / boundaries.len() as u128)
        })
        .collect();
    Ok(Some(OracleReport {
        degree: n,
        cochains,
        cocycles: cocycles.len() as u128,
        coboundaries: boundaries.len() as u128,
        torsion,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::coh::complex::build_complex;
    use crate::coh::module::CoefficientModule;
    use crate::ext::outer::all_outer_actions;
    use crate::maps::aut::automorphisms;
    use std::sync::Arc;

    #[test]
    fn oracle_matches_small_complexes() {
        let fibers = [catalog::bar_cyclic(2, 4).unwrap(), catalog::bar_cyclic(3, 4).unwrap(), catalog::bar_cyclic(4, 4).unwrap()];
        let bases = [catalog::bar_cyclic(2, 4).unwrap(), catalog::bar_cyclic(3, 4).unwrap()];
        for m in fibers {
            let aut = Arc::new(automorphisms(&Arc::new(m)).unwrap());
            let module = Arc::new(CoefficientModule::new(aut.clone()).unwrap());
            for h in &bases {
                let h = Arc::new(h.clone());
                for alpha in all_outer_actions(&h, &aut) {
                    let c = build_complex(h.clone(), module.clone(), &alpha).unwrap();
                    for n in 0..=2 {
                        let report = brute_force_cohomology(&c, n).unwrap().unwrap();
                        assert!(report.agrees_with(&c.cohomology(n).unwrap()), "degree {n}: {report:?}");
                    }
                }
            }
        }
    }
}
