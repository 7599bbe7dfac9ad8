//! Partial group files.
//!
//! ```text
//! partial-group amalgam
//! level 6
//! complete yes
//! elements 1 a b
//! inv a = a
//! inv b = b
//! a a = 1
//! b b = 1
//! a a a a a a
//! b b b b b b
//! ```
//!
//! Domain lines of length 2 carry their product; longer lines are seed words
//! that the loader closes up. A line `all` declares every word a member and
//! requires the full product table, which is how bar constructions of groups
//! are stored.

use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::group::{bar_construction, GroupTable};
use crate::io::{read_file, split_eq, Source};
use crate::partial_group::{default_level, PartialGroup};
use crate::saturate::{saturate, Saturation, Seeds};
use crate::word::{Letter, Word, UNIT};

const KEYWORDS: [&str; 6] = ["partial-group", "level", "complete", "elements", "inv", "all"];

#[derive(Debug, Clone)]
pub struct PgFile {
    pub name: String,
    pub level: Option<usize>,
    pub declared_complete: bool,
    pub names: Vec<String>,
    pub inv: Vec<Letter>,
    pub products: Vec<(Letter, Letter, Letter)>,
    pub words: Vec<Word>,
    pub all: bool,
}

pub fn parse_pg(text: &str, file: &str) -> Result<PgFile> {
    let src = Source { file };
    let mut lines = Source::lines(text);
    let first = lines.next().ok_or_else(|| src.err(1, "empty file"))?;
    let name = match (first.head, first.rest.as_slice()) {
        ("partial-group", [name]) => name.to_string(),
        _ => return Err(src.err(first.no, "expected `partial-group <name>`")),
    };
    let mut out = PgFile {
        name,
        level: None,
        declared_complete: false,
        names: Vec::new(),
        inv: Vec::new(),
        products: Vec::new(),
        words: Vec::new(),
        all: false,
    };
    let mut inv: Vec<Option<Letter>> = Vec::new();
    for line in lines {
        let lookup = |t: &str| -> Result<Letter> {
            out.names
                .iter()
                .position(|n| n == t)
                .map(|i| i as Letter)
                .ok_or_else(|| src.err(line.no, format!("unknown element {t:?}")))
        };
        match line.head {
            "level" => {
                let l = match line.rest.as_slice() {
                    [l] => l.parse::<usize>().ok().filter(|&l| l >= 2),
                    _ => None,
                };
                out.level = Some(l.ok_or_else(|| src.err(line.no, "expected `level <n>` with n >= 2"))?);
            }
            "complete" => {
                out.declared_complete = match line.rest.as_slice() {
                    ["yes"] => true,
                    ["no"] => false,
                    _ => return Err(src.err(line.no, "expected `complete yes` or `complete no`")),
                };
            }
            "elements" => {
                if !out.names.is_empty() {
                    return Err(src.err(line.no, "elements declared twice"));
                }
                if line.rest.first() != Some(&"1") {
                    return Err(src.err(line.no, "the first element must be the unit `1`"));
                }
                let mut seen = HashSet::new();
                for &t in &line.rest {
                    if KEYWORDS.contains(&t) || t == "=" {
                        return Err(src.err(line.no, format!("{t:?} is reserved")));
                    }
                    if !seen.insert(t) {
                        return Err(src.err(line.no, format!("duplicate element {t}")));
                    }
                }
                out.names = line.rest.iter().map(|t| t.to_string()).collect();
                inv = vec![None; out.names.len()];
                inv[0] = Some(UNIT);
            }
            "inv" => {
                let (x, y) = match line.rest.as_slice() {
                    [x, "=", y] => (lookup(x)?, lookup(y)?),
                    _ => return Err(src.err(line.no, "expected `inv <x> = <y>`")),
                };
                if inv[x as usize].replace(y).is_some_and(|old| old != y) {
                    return Err(src.err(line.no, "conflicting inverses"));
                }
            }
            "all" => out.all = true,
            _ => {
                if out.names.is_empty() {
                    return Err(src.err(line.no, "domain line before `elements`"));
                }
                let mut tokens = vec![line.head];
                tokens.extend(&line.rest);
                if let Some((lhs, rhs)) = split_eq(&tokens) {
                    let [a, b] = lhs.as_slice() else {
                        return Err(src.err(line.no, "only length-2 words carry a product"));
                    };
                    out.products.push((lookup(a)?, lookup(b)?, lookup(rhs)?));
                } else if tokens.contains(&"=") {
                    return Err(src.err(line.no, "malformed product"));
                } else {
                    let w = tokens.iter().map(|t| lookup(t)).collect::<Result<Word>>()?;
                    if w.len() == 2 {
                        return Err(src.err(line.no, "length-2 words need a product"));
                    }
                    out.words.push(w);
                }
            }
        }
    }
    if out.names.is_empty() {
        return Err(src.err(0, "no `elements` line"));
    }
    out.inv = inv
        .iter()
        .enumerate()
        .map(|(i, y)| y.ok_or_else(|| src.err(0, format!("no inverse for {}", out.names[i]))))
        .collect::<Result<_>>()?;
    Ok(out)
}

impl PgFile {
    pub fn effective_level(&self, level: Option<usize>) -> usize {
        level.or(self.level).unwrap_or_else(default_level)
    }

    pub fn seeds(&self, level: Option<usize>) -> Seeds {
        Seeds {
            names: self.names.clone(),
            inv: self.inv.clone(),
            level: self.effective_level(level),
            words: self.words.clone(),
            products: self.products.clone(),
            declared_complete: self.declared_complete,
        }
    }

    /// The declared structure closed under the partial group axioms.
    pub fn load(&self, level: Option<usize>) -> Result<Saturation> {
        if !self.all {
            return saturate(&self.seeds(level));
        }
        let n = self.names.len();
        let mut mul = vec![Letter::MAX; n * n];
        for x in 0..n {
            mul[x] = x as Letter;
            mul[x * n] = x as Letter;
        }
        for &(a, b, c) in &self.products {
            mul[a as usize * n + b as usize] = c;
        }
        if let Some(i) = mul.iter().position(|&c| c == Letter::MAX) {
            return Err(Error::NotAGroup(format!(
                "`all` needs every product; {} {} is missing",
                self.names[i / n],
                self.names[i % n]
            )));
        }
        let g = GroupTable::new(self.names.clone(), mul)?;
        if let Some(x) = (0..n as Letter).find(|&x| g.inv(x) != self.inv[x as usize]) {
            return Err(Error::Validation(format!("declared inverse of {} disagrees with the table", g.name(x))));
        }
        Ok(Saturation { pg: bar_construction(&g, self.effective_level(level))?, overflow: Vec::new() })
    }

    /// The declarations as given, without closure, for diagnosing files the
    /// closure rejects.
    pub fn raw(&self, level: Option<usize>) -> Result<PartialGroup> {
        let level = self.effective_level(level);
        let words = self.words.iter().filter(|w| w.len() <= level).map(|w| w.canonical());
        let mut seen = HashSet::new();
        let products: Vec<_> = self.products.iter().copied().filter(|&(a, b, _)| seen.insert((a, b))).collect();
        PartialGroup::from_parts(self.names.clone(), self.inv.clone(), level, words, products, self.declared_complete)
    }
}

pub fn load_pg(path: &Path, level: Option<usize>) -> Result<(PgFile, Saturation)> {
    let text = read_file(path)?;
    let file = parse_pg(&text, &path.display().to_string())?;
    let sat = file.load(level)?;
    Ok((file, sat))
}

fn tokens(pg: &PartialGroup, w: &[Letter]) -> String {
    w.iter().map(|&x| pg.name(x)).collect::<Vec<_>>().join(" ")
}

fn is_full(pg: &PartialGroup) -> bool {
    let n = pg.size() - 1;
    let sizes = pg.domain_sizes();
    (2..=pg.level()).all(|k| sizes[k] == n.pow(k as u32))
}

/// Canonical text: header, elements, inverses, products in word order, then
/// either `all` or the longer words that are not an outer face of another
/// stored word, shortest first.
pub fn serialize_pg(name: &str, pg: &PartialGroup) -> String {
    let mut out = String::new();
    out.push_str(&format!("partial-group {name}\n"));
    out.push_str(&format!("level {}\n", pg.level()));
    out.push_str(&format!("complete {}\n", if pg.is_complete() { "yes" } else { "no" }));
    out.push_str(&format!("elements {}\n", pg.names().join(" ")));
    for x in pg.letters() {
        out.push_str(&format!("inv {} = {}\n", pg.name(x), pg.name(pg.inv(x))));
    }
    for w in pg.words_of_len(2) {
        let c = pg.product(w[0], w[1]).expect("length-2 member has a product");
        out.push_str(&format!("{} = {}\n", tokens(pg, w), pg.name(c)));
    }
    if is_full(pg) {
        out.push_str("all\n");
        return out;
    }
    for k in 3..=pg.level() {
        let covered: HashSet<&[Letter]> =
            pg.words_of_len(k + 1).iter().flat_map(|u| [&u[1..], &u[..k]]).collect();
        for w in pg.words_of_len(k) {
            if !covered.contains(&w[..]) {
                out.push_str(&tokens(pg, w));
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn round_trip(pg: &PartialGroup) {
        let text = serialize_pg("x", pg);
        let back = parse_pg(&text, "x").unwrap().load(None).unwrap().pg;
        assert_eq!(&back, pg);
        assert_eq!(serialize_pg("x", &back), text);
    }

    #[test]
    fn catalog_round_trips() {
        round_trip(&catalog::amalgam(6).unwrap());
        round_trip(&catalog::bar_klein(4).unwrap());
        round_trip(&catalog::bar_symmetric3(3).unwrap());
    }

    #[test]
    fn amalgam_is_stored_by_its_longest_words() {
        let text = serialize_pg("amalgam", &catalog::amalgam(5).unwrap());
        assert!(text.ends_with("a a = 1\nb b = 1\na a a a a\nb b b b b\n"), "{text}");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_pg("partial-group x\nelements 1 a\nq q = 1\n", "f").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_pg("partial-group x\nelements 1 a\ninv a = a\na a a = 1\n", "f").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
    }
}
