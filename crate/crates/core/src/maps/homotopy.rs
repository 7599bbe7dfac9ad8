//! Homotopies between homomorphisms.
//!
//! A homotopy `f <-η- g` from `g` to `f` is a single target element `η` such
//! that for every source word `[x1..xn]` with room for one more letter, each
//! word `[f(x1)..f(xk)|η|g(x(k+1))..g(xn)]` is a member and all of them have
//! the same product. On letters this says `η·g(x) = f(x)·η`.

use crate::error::{Error, Result};
use crate::maps::hom::{apply_word, compose, Witness};
use crate::partial_group::PartialGroup;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homotopy {
    /// Target end `f`.
    pub to: Vec<Letter>,
    /// Source end `g`.
    pub from: Vec<Letter>,
    pub label: Letter,
}

pub fn check_homotopy(
    to: &[Letter],
    from: &[Letter],
    label: Letter,
    source: &PartialGroup,
    target: &PartialGroup,
) -> Result<Homotopy, Witness> {
    let max_len = target.level().saturating_sub(1).min(source.level());
    for u in source.words_up_to(max_len) {
        check_word(to, from, label, &u, target)?;
    }
    Ok(Homotopy { to: to.to_vec(), from: from.to_vec(), label })
}

fn check_word(
    to: &[Letter],
    from: &[Letter],
    label: Letter,
    u: &[Letter],
    target: &PartialGroup,
) -> Result<(), Witness> {
    let mut common = None;
    for k in 0..=u.len() {
        let mut w = apply_word(to, &u[..k]);
        w.push(label);
        w.extend_from(&apply_word(from, &u[k..]));
        let w = w.canonical();
        if !target.contains_canonical(&w) {
            return Err(Witness::new(u, format!("{} is not a member (k = {k})", target.fmt_word(&w))));
        }
        let p = target.fold(&w);
        match common {
            None => common = Some(p),
            Some(q) if q != p => {
                return Err(Witness::new(u, format!("products differ at k = {k}")));
            }
            _ => {}
        }
    }
    Ok(())
}

fn verified(h: Result<Homotopy, Witness>, what: &str) -> Result<Homotopy> {
    h.map_err(|w| Error::structural(format!("{what} is not a homotopy: {w}")))
}

/// `(f <-η- g)` becomes `(g <-η⁻¹- f)`.
pub fn invert(h: &Homotopy, source: &PartialGroup, target: &PartialGroup) -> Result<Homotopy> {
    verified(check_homotopy(&h.from, &h.to, target.inv(h.label), source, target), "inverse")
}

/// `(f <-η- g)` with `j: K -> H` becomes `(f∘j <-η- g∘j)`.
pub fn precompose(
    h: &Homotopy,
    j: &[Letter],
    domain: &PartialGroup,
    target: &PartialGroup,
) -> Result<Homotopy> {
    verified(
        check_homotopy(&compose(&h.to, j), &compose(&h.from, j), h.label, domain, target),
        "precomposite",
    )
}

/// `(f <-η- g)` with `k: M -> M'` becomes `(k∘f <-k(η)- k∘g)`.
pub fn postcompose(
    h: &Homotopy,
    k: &[Letter],
    source: &PartialGroup,
    codomain: &PartialGroup,
) -> Result<Homotopy> {
    verified(
        check_homotopy(&compose(k, &h.to), &compose(k, &h.from), k[h.label as usize], source, codomain),
        "postcomposite",
    )
}

/// Pastes `outer = (f <-η- g): H -> M` and `inner = (i <-ν- j): K -> H`
/// into `(f∘i <-η·g(ν)- g∘j)`, checking that `η·g(ν) = f(ν)·η`.
pub fn paste(
    outer: &Homotopy,
    inner: &Homotopy,
    k: &PartialGroup,
    m: &PartialGroup,
) -> Result<Homotopy> {
    let nu = inner.label as usize;
    let left = m.pi(&[outer.label, outer.from[nu]]);
    let right = m.pi(&[outer.to[nu], outer.label]);
    let label = match (left, right) {
        (Some(a), Some(b)) if a == b => a,
        _ => {
            return Err(Error::structural(format!(
                "pasting labels disagree: {} vs {}",
                fmt_opt(m, left),
                fmt_opt(m, right)
            )))
        }
    };
    verified(
        check_homotopy(&compose(&outer.to, &inner.to), &compose(&outer.from, &inner.from), label, k, m),
        "pasted map",
    )
}

fn fmt_opt(m: &PartialGroup, x: Option<Letter>) -> String {
    x.map_or_else(|| "undefined".to_string(), |x| m.name(x).to_string())
}

/// The constant homotopy `f <-1- f`.
pub fn identity(f: &[Letter]) -> Homotopy {
    Homotopy { to: f.to_vec(), from: f.to_vec(), label: 0 }
}

pub(crate) fn conjugation_word(eta: Letter, x: Letter, target: &PartialGroup) -> Word {
    Word::from([eta, x, target.inv(eta)]).canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::maps::hom::identity_map;

    #[test]
    fn conjugation_is_homotopic_to_identity() {
        let s3 = catalog::bar_symmetric3(4).unwrap();
        let id = identity_map(6);
        let h = 3; // s
        let conj: Vec<Letter> = (0..6).map(|x| s3.pi(&[s3.inv(h), x, h]).unwrap()).collect();
        // h·(h⁻¹xh) = x·h
        let hom = check_homotopy(&id, &conj, h, &s3, &s3).unwrap();
        let back = invert(&hom, &s3, &s3).unwrap();
        assert_eq!(back.label, s3.inv(h));
        assert!(check_homotopy(&id, &conj, 1, &s3, &s3).is_err());
    }

    #[test]
    fn amalgam_letter_is_not_a_self_homotopy_of_the_identity() {
        let m = catalog::amalgam(6).unwrap();
        let id = identity_map(3);
        let w = check_homotopy(&id, &id, 1, &m, &m).unwrap_err();
        assert_eq!(w.word, Word::from([2]));
    }

    #[test]
    fn pasting_composes_labels() {
        let z4 = catalog::bar_cyclic(4, 4).unwrap();
        let id = identity_map(4);
        // In an abelian group every element is a self-homotopy of the identity.
        let a = check_homotopy(&id, &id, 1, &z4, &z4).unwrap();
        let b = check_homotopy(&id, &id, 2, &z4, &z4).unwrap();
        assert_eq!(paste(&a, &b, &z4, &z4).unwrap().label, 3);
    }
}
