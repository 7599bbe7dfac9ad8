use std::collections::{BTreeSet, HashMap, VecDeque};

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::partial_group::{fmt_word, PartialGroup};
use crate::word::{Letter, Word, UNIT};

/// Raw declarations of a partial group before closure.
#[derive(Debug, Clone)]
pub struct Seeds {
    pub names: Vec<String>,
    pub inv: Vec<Letter>,
    pub level: usize,
    pub words: Vec<Word>,
    pub products: Vec<(Letter, Letter, Letter)>,
    pub declared_complete: bool,
}

#[derive(Debug, Clone)]
pub struct Saturation {
    pub pg: PartialGroup,
    /// Words the closure forced that are longer than the level, sorted.
    pub overflow: Vec<Word>,
}

/// Closes `seeds` under subwords, contractions, word inversion and the
/// inverse-word rule `u -> [inv(u)|u]`, keeping words up to the level.
///
/// Products of length-2 words are taken from the declarations, or derived
/// from `x^-1 x = 1` and `(ab)^-1 = b^-1 a^-1`.
pub fn saturate(seeds: &Seeds) -> Result<Saturation> {
    let n = seeds.names.len();
    let level = seeds.level;
    if seeds.inv.len() != n {
        return Err(Error::Validation("inversion table has wrong size".into()));
    }
    let inv = |x: Letter| seeds.inv[x as usize];
    let mut known: HashMap<(Letter, Letter), Letter> = HashMap::new();
    for &(a, b, c) in &seeds.products {
        for x in [a, b, c] {
            if x as usize >= n {
                return Err(Error::IndexOutOfRange { index: x as usize, size: n });
            }
        }
        if let Some(&old) = known.get(&(a, b)) {
            if old != c {
                return Err(Error::IncoherentSeed(format!(
                    "two products declared for {}",
                    fmt_word(&seeds.names, &[a, b])
                )));
            }
        }
        known.insert((a, b), c);
    }

    let mut closure = Closure {
        names: &seeds.names,
        inv: &seeds.inv,
        level,
        known,
        seen: FxHashSet::default(),
        queue: VecDeque::new(),
        overflow: BTreeSet::new(),
    };

    let mut initial: Vec<Word> = seeds.words.iter().map(|w| w.canonical()).collect();
    initial.extend(seeds.products.iter().map(|&(a, b, _)| Word::from([a, b]).canonical()));
    initial.extend((1..n as Letter).map(|x| Word::from([inv(x), x])));
    initial.sort();
    for w in initial {
        closure.add(w)?;
    }
    while let Some(w) = closure.queue.pop_front() {
        closure.expand(&w)?;
    }

    let products: Vec<(Letter, Letter, Letter)> = closure
        .seen
        .iter()
        .filter(|w| w.len() == 2)
        .map(|w| (w[0], w[1], closure.known[&(w[0], w[1])]))
        .collect();
    let words: Vec<Word> = closure.seen.iter().filter(|w| w.len() > 2).cloned().collect();
    let overflow: Vec<Word> = closure.overflow.into_iter().collect();
    let complete = seeds.declared_complete && overflow.is_empty();
    let pg = PartialGroup::from_parts(seeds.names.clone(), seeds.inv.clone(), level, words, products, complete)?;
    Ok(Saturation { pg, overflow })
}

struct Closure<'a> {
    names: &'a [String],
    inv: &'a [Letter],
    level: usize,
    known: HashMap<(Letter, Letter), Letter>,
    seen: FxHashSet<Word>,
    queue: VecDeque<Word>,
    overflow: BTreeSet<Word>,
}

impl Closure<'_> {
    fn add(&mut self, w: Word) -> Result<()> {
        let w = w.canonical();
        if w.len() < 2 {
            return Ok(());
        }
        if w.len() > self.level {
            self.overflow.insert(w);
            return Ok(());
        }
        if self.seen.contains(&w) {
            return Ok(());
        }
        if w.len() == 2 {
            self.product(w[0], w[1])?;
        }
        self.seen.insert(w.clone());
        self.queue.push_back(w);
        Ok(())
    }

    fn product(&mut self, a: Letter, b: Letter) -> Result<Letter> {
        if let Some(&c) = self.known.get(&(a, b)) {
            return Ok(c);
        }
        let inv = |x: Letter| self.inv[x as usize];
        let derived = if b == inv(a) {
            Some(UNIT)
        } else {
            self.known.get(&(inv(b), inv(a))).map(|&c| inv(c))
        };
        match derived {
            Some(c) => {
                self.known.insert((a, b), c);
                Ok(c)
            }
            None => Err(Error::IncoherentSeed(format!(
                "no product for {}",
                fmt_word(self.names, &[a, b])
            ))),
        }
    }

    fn expand(&mut self, w: &Word) -> Result<()> {
        let n = w.len();
        self.add(w.slice(1, n))?;
        self.add(w.slice(0, n - 1))?;
        for i in 1..n {
            let p = self.product(w[i - 1], w[i])?;
            let mut c = w.slice(0, i - 1);
            c.push(p);
            c.extend_from(&w[i + 1..]);
            self.add(c)?;
        }
        let inverted: Word = w.iter().rev().map(|&x| self.inv[x as usize]).collect();
        self.add(inverted.concat(w))?;
        self.add(inverted)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein_seeds(level: usize) -> Seeds {
        // 1, a, b, c with c = ab, all involutions
        let mut products = Vec::new();
        for x in 1..4u16 {
            for y in 1..4u16 {
                products.push((x, y, x ^ y));
            }
        }
        Seeds {
            names: ["1", "a", "b", "c"].map(String::from).to_vec(),
            inv: vec![0, 1, 2, 3],
            level,
            words: vec![Word::from([1, 2])],
            products,
            declared_complete: true,
        }
    }

    #[test]
    fn inverse_word_of_a_pair_is_forced() {
        let s = saturate(&klein_seeds(4)).unwrap();
        assert!(s.pg.member(&[2, 1, 1, 2]));
        assert!(s.pg.validate().is_ok());

        let s = saturate(&klein_seeds(3)).unwrap();
        assert!(s.overflow.contains(&Word::from([2, 1, 1, 2])));
        assert!(!s.pg.is_complete());
    }

    #[test]
    fn missing_product_is_incoherent() {
        let seeds = Seeds {
            names: ["1", "a", "b", "c"].map(String::from).to_vec(),
            inv: vec![0, 1, 2, 3],
            level: 4,
            words: vec![Word::from([1, 2, 3])],
            products: vec![(1, 2, 3)],
            declared_complete: true,
        };
        assert!(matches!(saturate(&seeds), Err(Error::IncoherentSeed(_))));
    }
}
