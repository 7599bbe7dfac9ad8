//! Extensions realizing an outer action, one per element of `H²`.
//!
//! From a base pair `(t, η)` the class of `v ∈ H²` is the extension of the
//! perturbed pair `(t, z_v·η)`, where `z_v` is the representative cocycle of
//! `v`; `H²` acts by `act(v, [t, η']) = [t, z_v·η']`.

use std::sync::Arc;

use crate::coh::complex::{Cochain, Cohomology};
use crate::coh::obstruction::{obstruction, Obstruction};
use crate::error::{Error, Result};
use crate::ext::equivalence::find_equivalence;
use crate::ext::outer::OuterAction;
use crate::ext::pair::TwistingPair;
use crate::ext::twisted::{twisted_product, Extension};
use crate::maps::aut::AutData;
use crate::partial_group::PartialGroup;

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    /// Build at most this many classes, in lexicographic order of `H²`
    /// coordinates.
    pub limit: Option<usize>,
    /// Check that the built classes are pairwise inequivalent.
    pub verify: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { limit: None, verify: true }
    }
}

#[derive(Debug, Clone)]
pub struct ExtensionClass {
    /// Coordinates in `H²`.
    pub coords: Vec<u64>,
    pub cocycle: Cochain,
    pub ext: Extension,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub obstruction: Obstruction,
    /// `H²`, present when the obstruction vanishes.
    pub h2: Option<Cohomology>,
    pub classes: Vec<ExtensionClass>,
}

impl Classification {
    /// Number of classes, built or not.
    pub fn class_count(&self) -> u128 {
        self.h2.as_ref().map_or(0, Cohomology::order)
    }

    fn base_pair(&self) -> Result<&TwistingPair> {
        self.obstruction.witness.as_ref().ok_or_else(|| Error::structural("the outer action is obstructed"))
    }

    /// The pair `(t, z·η)` for a 2-cocycle `z` and a pair `(t, η)`.
    pub fn perturb(&self, pair: &TwistingPair, z: &[u64]) -> Result<TwistingPair> {
        let complex = &self.obstruction.complex;
        if !complex.is_cocycle(2, z) {
            return Err(Error::Validation("perturbation is not a 2-cocycle".into()));
        }
        let module = complex.module();
        let m = pair.fiber();
        let base = pair.base();
        let eta = base.words_of_len(2).iter().map(|w| {
            let shift = module.decode(&complex.value(z, w).expect("basis word"));
            ((w[0], w[1]), m.product(shift, pair.eta(w[0], w[1])).expect("central products are defined"))
        });
        pair.with_eta(eta.collect::<Vec<_>>())
    }

    /// The pair of the class with the given `H²` coordinates.
    pub fn pair_for(&self, coords: &[u64]) -> Result<TwistingPair> {
        let h2 = self.h2.as_ref().ok_or_else(|| Error::structural("the outer action is obstructed"))?;
        let z = h2.element(&self.obstruction.complex, coords);
        self.perturb(self.base_pair()?, &z)
    }

    /// `v` acting on a built class.
    pub fn act(&self, v: &[u64], class: usize) -> Result<Extension> {
        let h2 = self.h2.as_ref().ok_or_else(|| Error::structural("the outer action is obstructed"))?;
        let target = self.classes.get(class).ok_or(Error::IndexOutOfRange { index: class, size: self.classes.len() })?;
        let z = h2.element(&self.obstruction.complex, v);
        twisted_product(&self.perturb(target.ext.pair(), &z)?)
    }

    /// The built class equivalent to `ext`, if any.
    pub fn identify(&self, ext: &Extension) -> Result<Option<usize>> {
        for (i, class) in self.classes.iter().enumerate() {
            if find_equivalence(ext, &class.ext)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Index of the class with the given coordinates among the built ones.
    pub fn position(&self, coords: &[u64]) -> Option<usize> {
        self.classes.iter().position(|c| c.coords == coords)
    }
}

pub fn classify_extensions(fiber: &Arc<AutData>, base: &Arc<PartialGroup>, alpha: &OuterAction) -> Result<Classification> {
    classify_extensions_with(fiber, base, alpha, &ClassifyOptions::default())
}

pub fn classify_extensions_with(
    fiber: &Arc<AutData>,
    base: &Arc<PartialGroup>,
    alpha: &OuterAction,
    options: &ClassifyOptions,
) -> Result<Classification> {
    let ob = obstruction(fiber, base, alpha)?;
    if !ob.class_is_zero {
        return Ok(Classification { obstruction: ob, h2: None, classes: Vec::new() });
    }
    let h2 = ob.complex.cohomology(2)?;
    let mut out = Classification { obstruction: ob, h2: Some(h2), classes: Vec::new() };
    let all = out.h2.as_ref().expect("set above").elements();
    let take = options.limit.unwrap_or(all.len()).min(all.len());
    for coords in all.into_iter().take(take) {
        let pair = out.pair_for(&coords)?;
        let cocycle = out.h2.as_ref().expect("set above").element(&out.obstruction.complex, &coords);
        let ext = twisted_product(&pair)?;
        out.classes.push(ExtensionClass { coords, cocycle, ext });
    }
    if options.verify {
        for i in 0..out.classes.len() {
            for j in i + 1..out.classes.len() {
                if find_equivalence(&out.classes[i].ext, &out.classes[j].ext)?.is_some() {
                    return Err(Error::internal(format!(
                        "classes {:?} and {:?} are equivalent",
                        out.classes[i].coords, out.classes[j].coords
                    )));
                }
            }
        }
    }
    Ok(out)
}
