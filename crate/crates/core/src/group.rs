//! Finite groups given by multiplication tables, and their bar constructions.

use crate::error::{Error, Result};
use crate::partial_group::{PartialGroup, WordSet, NO_PRODUCT};
use crate::word::{Letter, Word, UNIT};

/// A finite group with element 0 as the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    names: Vec<String>,
    mul: Vec<Letter>,
}

impl GroupTable {
    /// Checks identity, closure, inverses and associativity.
    pub fn new(names: Vec<String>, mul: Vec<Letter>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if mul.len() != n * n {
            return Err(Error::NotAGroup(format!("table has {} entries, expected {}", mul.len(), n * n)));
        }
        if let Some(&bad) = mul.iter().find(|&&c| c as usize >= n) {
            return Err(Error::NotAGroup(format!("entry {bad} out of range")));
        }
        let g = GroupTable { names, mul };
        for x in 0..n as Letter {
            if g.mul(UNIT, x) != x || g.mul(x, UNIT) != x {
                return Err(Error::NotAGroup(format!("element 0 is not an identity (fails at {})", g.name(x))));
            }
            if !(0..n as Letter).any(|y| g.mul(x, y) == UNIT && g.mul(y, x) == UNIT) {
                return Err(Error::NotAGroup(format!("{} has no inverse", g.name(x))));
            }
        }
        for a in 0..n as Letter {
            for b in 0..n as Letter {
                let ab = g.mul(a, b);
                for c in 0..n as Letter {
                    if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "not associative at ({}, {}, {})",
                            g.name(a),
                            g.name(b),
                            g.name(c)
                        )));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Letter) -> &str {
        &self.names[x as usize]
    }

    pub fn mul(&self, a: Letter, b: Letter) -> Letter {
        self.mul[a as usize * self.order() + b as usize]
    }

    pub fn inv(&self, a: Letter) -> Letter {
        (0..self.order() as Letter).find(|&b| self.mul(a, b) == UNIT).expect("validated group")
    }

    /// Cyclic group with elements `1, a, a2, ...`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "a".to_string(),
                k => format!("a{k}"),
            })
            .collect();
        let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as Letter).collect();
        GroupTable::new(names, mul).expect("cyclic group")
    }

    /// Klein four-group `{1, a, b, c}` with `ab = c`.
    pub fn klein() -> Self {
        let names = ["1", "a", "b", "c"].map(String::from).to_vec();
        let mul = (0..16).map(|i| ((i / 4) ^ (i % 4)) as Letter).collect();
        GroupTable::new(names, mul).expect("klein group")
    }

    /// Dihedral group of order `2n`, elements `r^k s^f` named `1, r, r2, .., s, rs, r2s, ..`.
    pub fn dihedral(n: usize) -> Self {
        let id = |k: usize, f: usize| (f * n + k) as Letter;
        let names = (0..2 * n)
            .map(|i| {
                let (k, f) = (i % n, i / n);
                let r = match k {
                    0 => String::new(),
                    1 => "r".to_string(),
                    k => format!("r{k}"),
                };
                match (r.is_empty(), f) {
                    (true, 0) => "1".to_string(),
                    (_, 0) => r,
                    (_, _) => format!("{r}s"),
                }
            })
            .collect();
        let mut mul = Vec::with_capacity(4 * n * n);
        for a in 0..2 * n {
            for b in 0..2 * n {
                let (k1, f1, k2, f2) = (a % n, a / n, b % n, b / n);
                // r^k1 s^f1 r^k2 s^f2 = r^(k1 ± k2) s^(f1 + f2)
                let k = (if f1 == 0 { k1 + k2 } else { k1 + n - k2 }) % n;
                mul.push(id(k, (f1 + f2) % 2));
            }
        }
        GroupTable::new(names, mul).expect("dihedral group")
    }

    pub fn symmetric3() -> Self {
        GroupTable::dihedral(3)
    }
}

/// The bar construction of a group, truncated at `level`: every unit-free
/// word of length at most `level` is a member.
pub fn bar_construction(g: &GroupTable, level: usize) -> Result<PartialGroup> {
    if level < 2 {
        return Err(Error::Validation(format!("level must be at least 2, got {level}")));
    }
    let n = g.order();
    if n >= NO_PRODUCT as usize {
        return Err(Error::Validation(format!("group of order {n} is too large")));
    }
    let inv = (0..n as Letter).map(|x| g.inv(x)).collect();
    let mut domain: Vec<WordSet> = vec![WordSet::default(), WordSet::default()];
    let singles: WordSet = (1..n as Letter).map(Word::single).collect();
    for len in 2..=level {
        let prev = if len == 2 { &singles } else { &domain[len - 1] };
        let mut next = WordSet::with_capacity_and_hasher(prev.len() * (n - 1), Default::default());
        for w in prev {
            for x in 1..n as Letter {
                next.insert(w.concat(&[x]));
            }
        }
        domain.push(next);
    }
    Ok(PartialGroup::from_raw(g.names().to_vec(), inv, level, domain, g.mul.clone(), false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_groups_are_groups() {
        assert_eq!(GroupTable::cyclic(4).order(), 4);
        assert_eq!(GroupTable::klein().order(), 4);
        let s3 = GroupTable::symmetric3();
        assert_eq!(s3.names(), &["1", "r", "r2", "s", "rs", "r2s"]);
        // s r s = r^-1
        let (r, s) = (1, 3);
        assert_eq!(s3.mul(s3.mul(s, r), s), 2);
        assert_eq!(GroupTable::dihedral(4).order(), 8);
    }

    #[test]
    fn rejects_non_associative_table() {
        // A loop of order 5 that is not a group.
        let t: [[Letter; 5]; 5] =
            [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]];
        let names = (0..5).map(|i| if i == 0 { "1".into() } else { format!("x{i}") }).collect();
        let err = GroupTable::new(names, t.concat()).unwrap_err();
        assert!(matches!(err, Error::NotAGroup(_)));
    }

    #[test]
    fn bar_construction_sizes() {
        let p = bar_construction(&GroupTable::cyclic(3), 4).unwrap();
        assert_eq!(p.domain_sizes(), vec![1, 2, 4, 8, 16]);
        assert!(!p.is_complete());
        assert!(p.validate().is_ok());
    }

    #[test]
    fn bar_faces_multiply_neighbours() {
        let z2 = bar_construction(&GroupTable::cyclic(2), 3).unwrap();
        assert_eq!(z2.pi(&[1, 1]), Some(UNIT));
        let z4 = bar_construction(&GroupTable::cyclic(4), 3).unwrap();
        assert_eq!(z4.face(&[1, 1], 1).unwrap().canonical(), Word::single(2));
        assert_eq!(z4.face(&[1, 2, 3], 2).unwrap().canonical(), Word::from([1, 1]));
    }
}
