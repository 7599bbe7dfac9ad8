//! The twisting function of a pair: base simplices to chains in the
//! automorphism nerve, one dimension down.
//!
//! For `b = [h1..hm]` with partial products `h(i,j) = hi···hj`:
//!
//! ```text
//! objects  α0 = t(h1),  αj = t(h(1,j+1)) ∘ t(h(2,j+1))⁻¹       (1 <= j < m)
//! labels   η0 = η(h1,h2),  ηj = η(h1,h(2,j+1))⁻¹ · η(h1,h(2,j+2))  (1 <= j < m-1)
//! ```

use crate::error::{Error, Result};
use crate::ext::pair::TwistingPair;
use crate::maps::nerve::Chain;
use crate::word::{Letter, Word, UNIT};

/// Product of `b[i..j]` in the base, for a raw word whose canonical form is
/// a member.
fn partial_product(pair: &TwistingPair, b: &[Letter], i: usize, j: usize) -> Result<Letter> {
    let h = pair.base();
    let w = Word::from_slice(&b[i..j]).canonical();
    h.pi(&w).ok_or_else(|| Error::structural(format!("{} is not a base member", h.fmt_word(&w))))
}

/// `φ(b)` for a base word `b` of length at least 1; `b` may contain units.
pub fn expand_twisting_function(pair: &TwistingPair, b: &[Letter]) -> Result<Chain> {
    let m = b.len();
    if m == 0 {
        return Err(Error::MalformedWord("twisting function needs a non-empty word".into()));
    }
    let aut = pair.fiber_aut();
    let fiber = pair.fiber();
    let mul = |a: Letter, c: Letter| {
        fiber.product(a, c).ok_or_else(|| Error::structural("labels without a product in the fiber"))
    };
    let t = |g: Letter| pair.twist(g);

    let mut objects = Vec::with_capacity(m);
    objects.push(t(b[0]));
    for j in 1..m {
        let whole = partial_product(pair, b, 0, j + 1)?;
        let tail = partial_product(pair, b, 1, j + 1)?;
        objects.push(aut.compose(t(whole), aut.inverse(t(tail))));
    }
    // η(h1, h(2,k)) for k = 1..m, with h(2,1) = 1
    let head = b[0];
    let lead = |k: usize| -> Result<Letter> {
        let tail = partial_product(pair, b, 1, k)?;
        Ok(if head == UNIT || tail == UNIT { UNIT } else { pair.eta(head, tail) })
    };
    let mut labels = Vec::with_capacity(m.saturating_sub(1));
    for j in 0..m.saturating_sub(1) {
        let a = lead(j + 1)?;
        let c = lead(j + 2)?;
        labels.push(mul(fiber.inv(a), c)?);
    }
    let chain = Chain { objects, labels };
    chain.check(aut)?;
    Ok(chain)
}

/// Which of the four twisting-function identities failed, and where.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFailure {
    /// 1: inner faces, 2: first face, 3: upper degeneracies, 4: first degeneracy.
    pub identity: u8,
    pub word: Word,
    pub index: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwistingCheck {
    pub words: usize,
    pub comparisons: usize,
}

/// Checks, for every base word of length up to `max_len`,
///
/// 1. `φ(d_i b) = d_(i-1) φ(b)` for `2 <= i <= n`,
/// 2. `φ(d_1 b) = d_0 φ(b) · φ(d_0 b)`,
/// 3. `φ(s_i b) = s_(i-1) φ(b)` for `i >= 1`,
/// 4. `φ(s_0 b)` is the identity chain.
///
/// Identity 2 is the one that sees the cocycle condition.
pub fn check_twisting_function(pair: &TwistingPair, max_len: usize) -> Result<Result<TwistingCheck, IdentityFailure>> {
    let h = pair.base();
    let aut = pair.fiber_aut();
    let top = max_len.min(h.level());
    let mut stats = TwistingCheck::default();
    for b in h.words_up_to(top).filter(|w| !w.is_empty()) {
        let n = b.len();
        stats.words += 1;
        let phi = expand_twisting_function(pair, &b)?;
        let fail = |identity: u8, index: usize| Ok(Err(IdentityFailure { identity, word: b.clone(), index }));
        if n >= 2 {
            for i in 2..=n {
                stats.comparisons += 1;
                let lhs = expand_twisting_function(pair, &h.face(&b, i)?)?;
                if lhs != phi.face(i - 1, aut)? {
                    return fail(1, i);
                }
            }
            stats.comparisons += 1;
            let lhs = expand_twisting_function(pair, &h.face(&b, 1)?)?;
            let rhs = phi.face(0, aut)?.mul(&expand_twisting_function(pair, &h.face(&b, 0)?)?, aut)?;
            if lhs != rhs {
                return fail(2, 1);
            }
        }
        if n < h.level() {
            for i in 1..=n {
                stats.comparisons += 1;
                if expand_twisting_function(pair, &h.degeneracy(&b, i)?)? != phi.degeneracy(i - 1)? {
                    return fail(3, i);
                }
            }
            stats.comparisons += 1;
            if expand_twisting_function(pair, &h.degeneracy(&b, 0)?)? != Chain::identity(n) {
                return fail(4, 0);
            }
        }
    }
    Ok(Ok(stats))
}
