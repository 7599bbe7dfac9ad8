//! Normalized cochains on a partial group with coefficients in a fiber
//! center, twisted by an outer action.
//!
//! An `n`-cochain assigns a module element to every unit-free member word of
//! length `n`; coordinate `(w, i)` sits at `w·rank + i`, reduced mod the
//! `i`-th invariant factor. The differential is
//!
//! ```text
//! (δf)[g1|..|g(n+1)] = α(g1)·f(d0 w) + Σ_{1<=i<=n} (-1)^i f(di w) + (-1)^(n+1) f(d(n+1) w)
//! ```
//!
//! with faces that pick up a unit contributing nothing.

use std::sync::Arc;

use crate::coh::lattice::{Howell, Smith};
use crate::coh::module::CoefficientModule;
use crate::error::{Error, Result};
use crate::ext::outer::OuterAction;
use crate::partial_group::PartialGroup;
use crate::word::{Letter, Word};

/// Highest cochain degree built by default; enough for `H³`.
pub const DEFAULT_TOP_DEGREE: usize = 4;

pub type Cochain = Vec<u64>;

#[derive(Debug, Clone)]
pub struct CochainComplex {
    base: Arc<PartialGroup>,
    module: Arc<CoefficientModule>,
    alpha: OuterAction,
    bases: Vec<Vec<Word>>,
    /// `diffs[n][k]`: image of the `k`-th generator of `Cⁿ`.
    diffs: Vec<Vec<Cochain>>,
}

pub fn build_complex(base: Arc<PartialGroup>, module: Arc<CoefficientModule>, alpha: &OuterAction) -> Result<CochainComplex> {
    let top = DEFAULT_TOP_DEGREE.min(base.level());
    build_complex_to(base, module, alpha, top)
}

/// Builds cochains in degrees `0..=top` and the differentials between them,
/// and checks `δ∘δ = 0`.
pub fn build_complex_to(
    base: Arc<PartialGroup>,
    module: Arc<CoefficientModule>,
    alpha: &OuterAction,
    top: usize,
) -> Result<CochainComplex> {
    if top > base.level() {
        return Err(Error::structural(format!("degree {top} exceeds the base level {}", base.level())));
    }
    let alpha = OuterAction::new(&base, module.fiber_aut(), alpha.classes().to_vec())?;
    let bases: Vec<Vec<Word>> = (0..=top)
        .map(|n| match n {
            0 => vec![Word::empty()],
            1 => base.letters().map(Word::single).collect(),
            _ => base.words_of_len(n).iter().cloned().collect(),
        })
        .collect();
    let mut complex = CochainComplex { base, module, alpha, bases, diffs: Vec::new() };
    for n in 0..top {
        let d = complex.differential_matrix(n)?;
        complex.diffs.push(d);
    }
    for n in 1..top {
        for (k, v) in complex.diffs[n - 1].iter().enumerate() {
            if !complex.is_zero(n + 1, &complex.apply(n, v)) {
                return Err(Error::internal(format!("δ∘δ is nonzero on generator {k} of degree {}", n - 1)));
            }
        }
    }
    Ok(complex)
}

impl CochainComplex {
    pub fn base(&self) -> &Arc<PartialGroup> {
        &self.base
    }

    pub fn module(&self) -> &Arc<CoefficientModule> {
        &self.module
    }

    pub fn alpha(&self) -> &OuterAction {
        &self.alpha
    }

    /// Highest degree with cochains.
    pub fn top(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, n: usize) -> &[Word] {
        &self.bases[n]
    }

    pub fn dim(&self, n: usize) -> usize {
        self.bases[n].len() * self.module.rank()
    }

    /// Number of `n`-cochains, saturating.
    pub fn cochain_count(&self, n: usize) -> u128 {
        let per_word = self.module.order() as u128;
        (0..self.bases[n].len()).fold(1u128, |acc, _| acc.saturating_mul(per_word))
    }

    /// Index of a unit-free word among the degree-`n` basis words.
    pub fn word_index(&self, w: &[Letter]) -> Option<usize> {
        match w.len() {
            0 => Some(0),
            1 => (w[0] != 0 && (w[0] as usize) < self.base.size()).then(|| w[0] as usize - 1),
            n if n < self.bases.len() => self.base.words_of_len(n).get_index_of(w),
            _ => None,
        }
    }

    pub fn modulus(&self, coord: usize) -> u64 {
        self.module.factors()[coord % self.module.rank()]
    }

    pub fn zero(&self, n: usize) -> Cochain {
        vec![0; self.dim(n)]
    }

    pub fn is_zero(&self, n: usize, c: &[u64]) -> bool {
        debug_assert_eq!(c.len(), self.dim(n));
        c.iter().enumerate().all(|(k, &x)| x % self.modulus(k) == 0)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Cochain {
        a.iter().zip(b).enumerate().map(|(k, (&x, &y))| (x + y) % self.modulus(k)).collect()
    }

    pub fn scale(&self, s: u64, a: &[u64]) -> Cochain {
        a.iter().enumerate().map(|(k, &x)| (x * s) % self.modulus(k)).collect()
    }

    /// The value of `c` on a basis word, as module coordinates.
    pub fn value(&self, c: &[u64], w: &[Letter]) -> Option<Vec<u64>> {
        let r = self.module.rank();
        self.word_index(w).map(|i| c[i * r..(i + 1) * r].to_vec())
    }

    fn differential_matrix(&self, n: usize) -> Result<Vec<Cochain>> {
        let r = self.module.rank();
        let factors = self.module.factors();
        let mut rows = vec![vec![0u64; self.dim(n + 1)]; self.dim(n)];
        for (u_idx, u) in self.bases[n + 1].iter().enumerate() {
            for k in 0..=n + 1 {
                let face = self.base.face(u, k)?.canonical();
                if face.len() < n {
                    continue;
                }
                let f_idx = self
                    .word_index(&face)
                    .ok_or_else(|| Error::internal(format!("face {} is not a basis word", self.base.fmt_word(&face))))?;
                for i in 0..r {
                    for (j, &d) in factors.iter().enumerate() {
                        let coeff = if k == 0 {
                            self.module.action_entry(self.alpha.class(u[0]), j, i)
                        } else {
                            u64::from(i == j)
                        };
                        if coeff == 0 {
                            continue;
                        }
                        let coeff = if k % 2 == 1 { d - coeff % d } else { coeff % d };
                        let cell = &mut rows[f_idx * r + i][u_idx * r + j];
                        *cell = (*cell + coeff) % d;
                    }
                }
            }
        }
        Ok(rows)
    }

    /// `δⁿ c`.
    pub fn apply(&self, n: usize, c: &[u64]) -> Cochain {
        let mut out = self.zero(n + 1);
        for (k, row) in self.diffs[n].iter().enumerate() {
            let x = c[k];
            if x == 0 {
                continue;
            }
            for (idx, &y) in row.iter().enumerate() {
                if y != 0 {
                    let d = self.modulus(idx);
                    out[idx] = (out[idx] + x * y) % d;
                }
            }
        }
        out
    }

    pub fn is_cocycle(&self, n: usize, c: &[u64]) -> bool {
        n >= self.diffs.len() || self.is_zero(n + 1, &self.apply(n, c))
    }

    /// Common exponent of all coefficient groups.
    fn exponent(&self) -> u64 {
        self.module.exponent().max(1)
    }

    /// Coordinates of `c` in `(Z/e)^dim`, each entry scaled by `e/d`.
    fn embed(&self, c: &[u64]) -> Vec<u64> {
        let e = self.exponent();
        c.iter().enumerate().map(|(k, &x)| (x % self.modulus(k)) * (e / self.modulus(k))).collect()
    }

    fn unembed(&self, v: &[u64]) -> Cochain {
        let e = self.exponent();
        v.iter().enumerate().map(|(k, &x)| x / (e / self.modulus(k))).collect()
    }

    /// A cochain `c` of degree `n-1` with `δc = x`, if there is one.
    pub fn solve_coboundary(&self, n: usize, x: &[u64]) -> Option<Cochain> {
        if n == 0 {
            return self.is_zero(0, x).then(Vec::new);
        }
        let gens = &self.diffs[n - 1];
        let width = self.dim(n);
        let rows = gens
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let mut row = self.embed(v);
                row.extend((0..gens.len()).map(|i| u64::from(i == k)));
                row
            })
            .collect();
        let e = self.exponent();
        let h = Howell::new(rows, width + gens.len(), e);
        let mut v = self.embed(x);
        v.resize(width + gens.len(), 0);
        if !h.reduce(&mut v, width) {
            return None;
        }
        let c: Cochain = v[width..]
            .iter()
            .enumerate()
            .map(|(k, &y)| ((e - y) % e) % self.modulus(k))
            .collect();
        debug_assert!(self.apply(n - 1, &c) == x.iter().enumerate().map(|(k, &y)| y % self.modulus(k)).collect::<Vec<_>>());
        Some(c)
    }

    pub fn is_coboundary(&self, n: usize, x: &[u64]) -> bool {
        self.solve_coboundary(n, x).is_some()
    }

    /// `Hⁿ` by Howell and Smith forms over `Z/e`.
    pub fn cohomology(&self, n: usize) -> Result<Cohomology> {
        if n >= self.diffs.len() {
            return Err(Error::structural(format!(
                "H^{n} needs cochains of degree {}, complex stops at {}",
                n + 1,
                self.top()
            )));
        }
        let e = self.exponent();
        let width = self.dim(n);
        let gens = &self.diffs[n];
        let kernel_rows = gens
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let mut row = self.embed(v);
                row.extend((0..width).map(|i| if i == k { e / self.modulus(k) } else { 0 }));
                row
            })
            .collect();
        let kernel = Howell::new(kernel_rows, self.dim(n + 1) + width, e);
        let cocycles: Vec<Vec<u64>> = kernel.tail_rows(self.dim(n + 1)).map(<[u64]>::to_vec).collect();
        let r = cocycles.len();
        let mut rows: Vec<Vec<u64>> = cocycles
            .iter()
            .enumerate()
            .map(|(k, z)| {
                let mut row = z.clone();
                row.extend((0..r).map(|i| u64::from(i == k)));
                row
            })
            .collect();
        if n > 0 {
            rows.extend(self.diffs[n - 1].iter().map(|b| {
                let mut row = self.embed(b);
                row.resize(width + r, 0);
                row
            }));
        }
        let quotient = Howell::new(rows, width + r, e);
        let relations = quotient.tail_rows(width).map(<[u64]>::to_vec).collect();
        let smith = Smith::new(relations, r, e);
        let representatives = smith
            .generators
            .iter()
            .map(|g| {
                let mut v = vec![0u64; width];
                for (&coef, z) in g.iter().zip(&cocycles) {
                    for (x, &y) in v.iter_mut().zip(z) {
                        *x = (*x + coef * y) % e;
                    }
                }
                self.unembed(&v)
            })
            .collect();
        Ok(Cohomology { degree: n, factors: smith.orders.clone(), representatives, quotient, smith, width, cocycle_gens: r, modulus: e })
    }
}

/// `Hⁿ` as a direct sum of cyclic groups, with a representative cocycle for
/// each summand and a solver for coordinates.
#[derive(Debug, Clone)]
pub struct Cohomology {
    pub degree: usize,
    pub factors: Vec<u64>,
    pub representatives: Vec<Cochain>,
    quotient: Howell,
    smith: Smith,
    width: usize,
    cocycle_gens: usize,
    modulus: u64,
}

impl Cohomology {
    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    /// Coordinates of a cocycle's class, or `None` if it is not a cocycle.
    pub fn coordinates(&self, complex: &CochainComplex, cocycle: &[u64]) -> Option<Vec<u64>> {
        let e = self.modulus;
        let mut v = complex.embed(cocycle);
        v.resize(self.width + self.cocycle_gens, 0);
        if !self.quotient.reduce(&mut v, self.width) {
            return None;
        }
        let c: Vec<u64> = v[self.width..].iter().map(|&y| (e - y) % e).collect();
        Some(self.smith.coordinates(&c))
    }

    /// The cocycle `Σ coordsᵢ · representativeᵢ`.
    pub fn element(&self, complex: &CochainComplex, coords: &[u64]) -> Cochain {
        let mut out = complex.zero(self.degree);
        for (&k, rep) in coords.iter().zip(&self.representatives) {
            out = complex.add(&out, &complex.scale(k, rep));
        }
        out
    }

    /// Every element of the group as coordinates, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let bases: Vec<usize> = self.factors.iter().map(|&d| d as usize).collect();
        let mut digits = vec![0usize; bases.len()];
        let mut out = Vec::new();
        loop {
            out.push(digits.iter().map(|&x| x as u64).collect());
            if !crate::util::advance_mixed(&mut digits, &bases) {
                return out;
            }
        }
    }

    /// Number of elements killed by `k`.
    pub fn torsion(&self, k: u64) -> u128 {
        self.factors.iter().map(|&d| crate::coh::lattice::gcd(k, d) as u128).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::maps::aut::automorphisms;

    fn complex_for(fiber: PartialGroup, base: PartialGroup, classes: Vec<usize>) -> CochainComplex {
        let aut = Arc::new(automorphisms(&Arc::new(fiber)).unwrap());
        let module = Arc::new(CoefficientModule::new(aut.clone()).unwrap());
        let base = Arc::new(base);
        let alpha = OuterAction::new(&base, &aut, classes).unwrap();
        build_complex(base, module, &alpha).unwrap()
    }

    #[test]
    fn bar_differential_in_low_degree() {
        let c = complex_for(catalog::bar_cyclic(2, 4).unwrap(), catalog::bar_cyclic(2, 4).unwrap(), vec![0, 0]);
        assert_eq!(c.basis(2).len(), 1);
        assert_eq!(c.basis(3).len(), 1);
        // δf[a|a] = f(a) - f(1) + f(a) = 2f(a) = 0 mod 2
        assert_eq!(c.apply(1, &[1]), vec![0]);
        assert_eq!(c.cohomology(2).unwrap().factors, vec![2]);
        assert_eq!(c.cohomology(1).unwrap().factors, vec![2]);
        assert_eq!(c.cohomology(0).unwrap().factors, vec![2]);
    }

    #[test]
    fn inversion_kills_h2() {
        let c = complex_for(catalog::bar_cyclic(3, 4).unwrap(), catalog::bar_cyclic(2, 4).unwrap(), vec![0, 1]);
        assert!(c.cohomology(2).unwrap().factors.is_empty());
        assert!(c.cohomology(0).unwrap().factors.is_empty());
    }

    #[test]
    fn cyclic_coefficients_over_cyclic_base() {
        // H²(Z/4; Z/2) = Z/2, H¹(Z/4; Z/4) = Z/4
        let c = complex_for(catalog::bar_cyclic(2, 4).unwrap(), catalog::bar_cyclic(4, 4).unwrap(), vec![0; 4]);
        assert_eq!(c.cohomology(2).unwrap().factors, vec![2]);
        let c = complex_for(catalog::bar_cyclic(4, 4).unwrap(), catalog::bar_cyclic(4, 4).unwrap(), vec![0; 4]);
        assert_eq!(c.cohomology(1).unwrap().factors, vec![4]);
        assert_eq!(c.cohomology(2).unwrap().factors, vec![4]);
    }

    #[test]
    fn coordinates_of_representatives() {
        let c = complex_for(catalog::bar_klein(4).unwrap(), catalog::bar_cyclic(2, 4).unwrap(), vec![0, 0]);
        let h2 = c.cohomology(2).unwrap();
        assert_eq!(h2.factors, vec![2, 2]);
        for coords in h2.elements() {
            let z = h2.element(&c, &coords);
            assert!(c.is_cocycle(2, &z));
            assert_eq!(h2.coordinates(&c, &z).unwrap(), coords);
        }
    }
}
