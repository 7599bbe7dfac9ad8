//! The obstruction to realizing an outer action by a twisting pair.
//!
//! Lift each class to an automorphism `t(g)`, pick labels `η(g,h)` with
//! `t(g)∘t(h) <-η(g,h)- t(gh)`, and measure the failure of the cocycle
//! condition:
//!
//! ```text
//! κ[g|h|k] = η(g,h)·η(gh,k)·η(g,hk)⁻¹·t(g)(η(h,k))⁻¹
//! ```
//!
//! `κ` is central and a 3-cocycle; an action is realizable exactly when it
//! is a coboundary `δc`, and then `c·η` satisfies the cocycle condition.

use std::sync::Arc;

use crate::coh::complex::{build_complex, Cochain, CochainComplex};
use crate::coh::module::CoefficientModule;
use crate::error::{Error, Result};
use crate::ext::outer::OuterAction;
use crate::ext::pair::TwistingPair;
use crate::maps::aut::AutData;
use crate::maps::homotopy::check_homotopy;
use crate::partial_group::PartialGroup;
use crate::word::{Letter, Word, UNIT};

#[derive(Debug, Clone)]
pub struct Obstruction {
    pub complex: Arc<CochainComplex>,
    /// Rank of the lift used within each outer class (0 = least).
    pub lift_rank: usize,
    /// Chosen lifts, as fiber automorphism indices.
    pub twist: Vec<usize>,
    /// Chosen labels on length-2 base words, before correction.
    pub labels: Vec<((Letter, Letter), Letter)>,
    pub kappa: Cochain,
    pub class_is_zero: bool,
    /// Twisting pair realizing the action, when the class vanishes.
    pub witness: Option<TwistingPair>,
}

impl Obstruction {
    /// Non-unit values of `κ` as fiber letters.
    pub fn kappa_letters(&self) -> Vec<(Word, Letter)> {
        let module = self.complex.module();
        self.complex
            .basis(3)
            .iter()
            .filter_map(|w| {
                let v = self.complex.value(&self.kappa, w)?;
                let x = module.decode(&v);
                (x != UNIT).then(|| (w.clone(), x))
            })
            .collect()
    }
}

pub fn obstruction(fiber: &Arc<AutData>, base: &Arc<PartialGroup>, alpha: &OuterAction) -> Result<Obstruction> {
    obstruction_with_lift(fiber, base, alpha, 0)
}

/// Same as [`obstruction`] with the `rank`-th least automorphism of each
/// class as lift.
pub fn obstruction_with_lift(
    fiber: &Arc<AutData>,
    base: &Arc<PartialGroup>,
    alpha: &OuterAction,
    rank: usize,
) -> Result<Obstruction> {
    if base.level() < 3 {
        return Err(Error::structural("the obstruction needs base words of length 3"));
    }
    let module = Arc::new(CoefficientModule::new(fiber.clone())?);
    let complex = Arc::new(build_complex(base.clone(), module.clone(), alpha)?);
    let m = fiber.partial_group();
    let twist = alpha.lift(fiber, rank);

    let mut labels = Vec::new();
    for w in base.words_of_len(2) {
        let (g, h) = (w[0], w[1]);
        let gh = base.product(g, h).expect("member product");
        let to = fiber.compose(twist[g as usize], twist[h as usize]);
        let from = twist[gh as usize];
        let label = fiber
            .normalizer()
            .elements
            .iter()
            .copied()
            .find(|&eta| {
                fiber.inner(eta).map(|c| fiber.compose(c, from)) == Some(to)
                    && check_homotopy(fiber.perm(to), fiber.perm(from), eta, m, m).is_ok()
            })
            .ok_or_else(|| {
                Error::structural(format!(
                    "no label realizes t(g)∘t(h) <- t(gh) at {}; the outer action is not realizable",
                    base.fmt_word(w)
                ))
            })?;
        if label != UNIT {
            labels.push(((g, h), label));
        }
    }
    let raw = TwistingPair::new_unchecked(base.clone(), fiber.clone(), twist.clone(), labels.clone())?;
    let r = module.rank();
    let mut kappa = complex.zero(3);
    for (i, w) in complex.basis(3).iter().enumerate() {
        let defect = raw.cocycle_defect(w)?;
        let v = module.encode(defect).map_err(|_| {
            Error::internal(format!("obstruction value {} at {} is not central", m.name(defect), base.fmt_word(w)))
        })?;
        kappa[i * r..(i + 1) * r].copy_from_slice(&v);
    }
    if complex.top() > 3 && !complex.is_cocycle(3, &kappa) {
        return Err(Error::internal("obstruction is not a cocycle"));
    }
    let witness = match complex.solve_coboundary(3, &kappa) {
        None => None,
        Some(c) => {
            let corrected = base.words_of_len(2).iter().map(|w| {
                let shift = module.decode(&complex.value(&c, w).expect("basis word"));
                let eta = raw.eta(w[0], w[1]);
                ((w[0], w[1]), m.product(shift, eta).expect("central products are defined"))
            });
            Some(raw.with_eta(corrected.collect::<Vec<_>>()).map_err(|e| {
                Error::internal(format!("corrected labels do not form a twisting pair: {e}"))
            })?)
        }
    };
    Ok(Obstruction {
        complex,
        lift_rank: rank,
        twist,
        labels,
        class_is_zero: witness.is_some(),
        kappa,
        witness,
    })
}
