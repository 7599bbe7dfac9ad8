use std::collections::HashMap;
use std::fmt;
use std::hash::BuildHasherDefault;

use indexmap::IndexSet;
use rustc_hash::FxHasher;

use crate::error::{Error, Result};
use crate::word::{Letter, Word, UNIT};

pub type WordSet = IndexSet<Word, BuildHasherDefault<FxHasher>>;

/// Sentinel in the dense product table for an undefined product.
pub const NO_PRODUCT: Letter = Letter::MAX;

pub const DEFAULT_LEVEL: usize = 6;

/// Truncation level from `PGX_LEVEL`, falling back to [`DEFAULT_LEVEL`].
pub fn default_level() -> usize {
    std::env::var("PGX_LEVEL")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&l| l >= 2)
        .unwrap_or(DEFAULT_LEVEL)
}

/// A finite partial group, stored up to a truncation level.
///
/// Only canonical words of length `2..=level` are stored. The empty word and
/// the one-letter words are members implicitly. The product of a member word
/// is the left fold of the binary product over its letters.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialGroup {
    names: Vec<String>,
    inv: Vec<Letter>,
    level: usize,
    domain: Vec<WordSet>,
    prod: Vec<Letter>,
    complete: bool,
}

impl fmt::Debug for PartialGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartialGroup")
            .field("size", &self.size())
            .field("level", &self.level)
            .field("domain", &self.domain_sizes())
            .field("complete", &self.complete)
            .finish()
    }
}

impl PartialGroup {
    /// Assembles a partial group from explicit data.
    ///
    /// `words` may contain any canonical words of length `2..=level`;
    /// every pair listed in `products` is added to the length-2 domain.
    /// Every length-2 domain word must carry a product. The axioms are not
    /// checked here; see [`PartialGroup::validate`].
    pub fn from_parts(
        names: Vec<String>,
        inv: Vec<Letter>,
        level: usize,
        words: impl IntoIterator<Item = Word>,
        products: impl IntoIterator<Item = (Letter, Letter, Letter)>,
        complete: bool,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 || names[0] != "1" {
            return Err(Error::Validation("element 0 must be the unit named \"1\"".into()));
        }
        if n >= NO_PRODUCT as usize {
            return Err(Error::Validation(format!("too many elements ({n})")));
        }
        if level < 2 {
            return Err(Error::Validation(format!("level must be at least 2, got {level}")));
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '#' || c == '=') {
                return Err(Error::Validation(format!("bad element name {name:?}")));
            }
            if seen.insert(name.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate element name {name}")));
            }
        }
        if inv.len() != n {
            return Err(Error::Validation("inversion table has wrong size".into()));
        }
        for &y in &inv {
            check_index(y, n)?;
        }

        let mut prod = vec![NO_PRODUCT; n * n];
        for x in 0..n {
            prod[x] = x as Letter;
            prod[x * n] = x as Letter;
        }
        let mut sorted: Vec<Vec<Word>> = vec![Vec::new(); level + 1];
        for (a, b, c) in products {
            check_index(a, n)?;
            check_index(b, n)?;
            check_index(c, n)?;
            if a == UNIT || b == UNIT {
                continue;
            }
            let slot = &mut prod[a as usize * n + b as usize];
            if *slot != NO_PRODUCT && *slot != c {
                return Err(Error::Validation(format!(
                    "conflicting products for {} {}",
                    names[a as usize], names[b as usize]
                )));
            }
            *slot = c;
            sorted[2].push(Word::from([a, b]));
        }
        for w in words {
            if !w.is_canonical() {
                return Err(Error::MalformedWord(format!("{w:?} contains the unit")));
            }
            for &x in w.iter() {
                check_index(x, n)?;
            }
            match w.len() {
                0 | 1 => {}
                l if l > level => {
                    return Err(Error::Validation(format!(
                        "word of length {l} exceeds level {level}"
                    )))
                }
                l => sorted[l].push(w),
            }
        }
        let mut domain = Vec::with_capacity(level + 1);
        for mut ws in sorted {
            ws.sort_unstable();
            ws.dedup();
            domain.push(ws.into_iter().collect::<WordSet>());
        }
        for w in &domain[2] {
            if prod[w[0] as usize * n + w[1] as usize] == NO_PRODUCT {
                return Err(Error::Validation(format!(
                    "no product for domain word {}",
                    fmt_word(&names, w)
                )));
            }
        }
        Ok(PartialGroup { names, inv, level, domain, prod, complete })
    }

    /// Fast constructor for callers that already hold sorted per-length sets
    /// and a dense product table consistent with them.
    pub(crate) fn from_raw(
        names: Vec<String>,
        inv: Vec<Letter>,
        level: usize,
        domain: Vec<WordSet>,
        prod: Vec<Letter>,
        complete: bool,
    ) -> Self {
        debug_assert_eq!(domain.len(), level + 1);
        debug_assert_eq!(prod.len(), names.len() * names.len());
        PartialGroup { names, inv, level, domain, prod, complete }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Letter) -> &str {
        &self.names[x as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(|i| i as Letter)
    }

    pub fn inv(&self, x: Letter) -> Letter {
        self.inv[x as usize]
    }

    pub fn inverse_table(&self) -> &[Letter] {
        &self.inv
    }

    pub fn elements(&self) -> impl Iterator<Item = Letter> {
        0..self.size() as Letter
    }

    /// Non-unit elements in id order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        1..self.size() as Letter
    }

    /// Stored canonical words of length `n` in lexicographic order.
    pub fn words_of_len(&self, n: usize) -> &WordSet {
        static EMPTY: std::sync::OnceLock<WordSet> = std::sync::OnceLock::new();
        if (2..=self.level).contains(&n) {
            &self.domain[n]
        } else {
            EMPTY.get_or_init(WordSet::default)
        }
    }

    /// Every stored word, shortest first.
    pub fn stored_words(&self) -> impl Iterator<Item = &Word> {
        self.domain.iter().flat_map(|s| s.iter())
    }

    pub fn domain_sizes(&self) -> Vec<usize> {
        (0..=self.level)
            .map(|n| match n {
                0 => 1,
                1 => self.size() - 1,
                _ => self.domain[n].len(),
            })
            .collect()
    }

    /// Canonical member words of length at most `max_len`, including the empty
    /// word and the one-letter words, shortest first.
    pub fn words_up_to(&self, max_len: usize) -> impl Iterator<Item = Word> + '_ {
        let singles = if max_len >= 1 { self.size() } else { 1 };
        std::iter::once(Word::empty())
            .chain((1..singles as Letter).map(Word::single))
            .chain((2..=max_len.min(self.level)).flat_map(move |n| self.domain[n].iter().cloned()))
    }

    pub fn product(&self, a: Letter, b: Letter) -> Option<Letter> {
        let p = self.prod[a as usize * self.size() + b as usize];
        (p != NO_PRODUCT).then_some(p)
    }

    /// Membership of a canonical word.
    pub fn contains_canonical(&self, w: &[Letter]) -> bool {
        match w.len() {
            0 | 1 => true,
            n if n > self.level => false,
            2 => self.prod[w[0] as usize * self.size() + w[1] as usize] != NO_PRODUCT,
            n => self.domain[n].contains(w),
        }
    }

    pub fn member(&self, w: &[Letter]) -> bool {
        if w.contains(&UNIT) {
            let c: Word = w.iter().copied().filter(|&x| x != UNIT).collect();
            self.contains_canonical(&c)
        } else {
            self.contains_canonical(w)
        }
    }

    /// Left fold of the binary product, without checking membership.
    pub fn fold(&self, w: &[Letter]) -> Option<Letter> {
        let mut acc = UNIT;
        for &x in w {
            acc = self.product(acc, x)?;
        }
        Some(acc)
    }

    /// The product of a member word, or `None` if the word is not a member.
    pub fn pi(&self, w: &[Letter]) -> Option<Letter> {
        if self.member(w) {
            self.fold(w)
        } else {
            None
        }
    }

    /// Face operator `d_i` on an `n`-simplex: drops an outer letter or
    /// multiplies two adjacent ones. The result is not canonicalized.
    pub fn face(&self, w: &[Letter], i: usize) -> Result<Word> {
        let n = w.len();
        if !self.member(w) {
            return Err(Error::MalformedWord(format!("{} is not a member", self.fmt_word(w))));
        }
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, size: n + 1 });
        }
        if i == 0 {
            return Ok(Word::from_slice(&w[1..]));
        }
        if i == n {
            return Ok(Word::from_slice(&w[..n - 1]));
        }
        let p = self.product(w[i - 1], w[i]).ok_or_else(|| {
            Error::internal(format!("member {} lacks an adjacent product", self.fmt_word(w)))
        })?;
        let mut out = Word::from_slice(&w[..i - 1]);
        out.push(p);
        out.extend_from(&w[i + 1..]);
        Ok(out)
    }

    /// Degeneracy `s_i`: inserts the unit after the `i`-th letter.
    pub fn degeneracy(&self, w: &[Letter], i: usize) -> Result<Word> {
        if i > w.len() {
            return Err(Error::IndexOutOfRange { index: i, size: w.len() + 1 });
        }
        let mut out = Word::from_slice(&w[..i]);
        out.push(UNIT);
        out.extend_from(&w[i..]);
        Ok(out)
    }

    pub fn invert_word(&self, w: &[Letter]) -> Word {
        w.iter().rev().map(|&x| self.inv(x)).collect()
    }

    /// Drops every stored word longer than `level`.
    pub fn truncate(&self, level: usize) -> Result<PartialGroup> {
        if level < 2 {
            return Err(Error::Validation(format!("level must be at least 2, got {level}")));
        }
        if level >= self.level {
            return Ok(self.clone());
        }
        let dropped = self.domain[level + 1..].iter().any(|s| !s.is_empty());
        Ok(PartialGroup {
            names: self.names.clone(),
            inv: self.inv.clone(),
            level,
            domain: self.domain[..=level].to_vec(),
            prod: self.prod.clone(),
            complete: self.complete && !dropped,
        })
    }

    pub fn fmt_word(&self, w: &[Letter]) -> String {
        fmt_word(&self.names, w)
    }

    /// Parses space-separated element names.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        s.split_whitespace()
            .map(|t| {
                self.index_of(t)
                    .ok_or_else(|| Error::MalformedWord(format!("unknown element {t:?}")))
            })
            .collect()
    }

    /// Checks every axiom that fits under the truncation level.
    pub fn validate(&self) -> ValidationReport {
        Validator::new(self).run()
    }
}

fn check_index(x: Letter, n: usize) -> Result<()> {
    if (x as usize) < n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: x as usize, size: n })
    }
}

pub(crate) fn fmt_word(names: &[String], w: &[Letter]) -> String {
    let mut s = String::from("[");
    for (i, &x) in w.iter().enumerate() {
        if i > 0 {
            s.push('|');
        }
        s.push_str(&names[x as usize]);
    }
    s.push(']');
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// Shape of the element, inversion and product tables.
    Table,
    /// Subword closure.
    Subwords,
    /// Contractions are members and the product is independent of order.
    Contraction,
    /// Inversion is an involution compatible with the domain.
    Inversion,
    /// `[inv(u)|u]` is a member with product 1.
    InverseWord,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Table => "table",
            Axiom::Subwords => "subwords",
            Axiom::Contraction => "contraction",
            Axiom::Inversion => "inversion",
            Axiom::InverseWord => "inverse-word",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub word: Word,
    pub detail: String,
}

/// A check that could not run because the words involved exceed the level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedCheck {
    pub axiom: Axiom,
    pub length: usize,
    pub count: usize,
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    /// First violations found, in domain order. At most [`MAX_REPORTED`].
    pub violations: Vec<Violation>,
    pub violation_count: usize,
    pub skipped: Vec<SkippedCheck>,
    pub words_checked: usize,
}

pub const MAX_REPORTED: usize = 64;

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violation_count == 0
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn into_result(self) -> Result<ValidationReport> {
        match self.violations.first() {
            None => Ok(self),
            Some(v) => Err(Error::Validation(format!(
                "{} violation(s); first: {} at {:?}: {}",
                self.violation_count, v.axiom, v.word, v.detail
            ))),
        }
    }
}

struct Validator<'a> {
    pg: &'a PartialGroup,
    report: ValidationReport,
}

impl<'a> Validator<'a> {
    fn new(pg: &'a PartialGroup) -> Self {
        Validator { pg, report: ValidationReport::default() }
    }

    fn fail(&mut self, axiom: Axiom, word: &[Letter], detail: impl Into<String>) {
        self.report.violation_count += 1;
        if self.report.violations.len() < MAX_REPORTED {
            self.report.violations.push(Violation {
                axiom,
                word: Word::from_slice(word),
                detail: detail.into(),
            });
        }
    }

    fn run(mut self) -> ValidationReport {
        let pg = self.pg;
        self.check_tables();
        for x in pg.letters() {
            self.check_inverse_word(&[x]);
        }
        for n in 2..=pg.level {
            for w in pg.domain[n].iter() {
                self.report.words_checked += 1;
                self.check_subwords(w);
                self.check_contractions(w);
                self.check_inversion(w);
                if 2 * n <= pg.level {
                    self.check_inverse_word(w);
                }
            }
        }
        for n in 1..=pg.level {
            if 2 * n > pg.level {
                let count = if n == 1 { pg.size() - 1 } else { pg.domain[n].len() };
                if count > 0 {
                    self.report.skipped.push(SkippedCheck { axiom: Axiom::InverseWord, length: n, count });
                }
            }
        }
        self.report
    }

    fn check_tables(&mut self) {
        let pg = self.pg;
        if pg.inv(UNIT) != UNIT {
            self.fail(Axiom::Inversion, &[UNIT], "inverse of the unit is not the unit");
        }
        for x in pg.elements() {
            if pg.inv(pg.inv(x)) != x {
                self.fail(Axiom::Inversion, &[x], "inversion is not an involution");
            }
        }
        let n = pg.size();
        for a in pg.letters() {
            for b in pg.letters() {
                let defined = pg.prod[a as usize * n + b as usize] != NO_PRODUCT;
                if defined != pg.domain[2].contains(&[a, b][..]) {
                    self.fail(Axiom::Table, &[a, b], "product table disagrees with the domain");
                }
            }
        }
    }

    fn check_subwords(&mut self, w: &[Letter]) {
        let n = w.len();
        // Faces d_0 and d_n suffice: every subword is an iterated outer face.
        if !self.pg.contains_canonical(&w[1..]) {
            self.fail(Axiom::Subwords, w, format!("missing {}", self.pg.fmt_word(&w[1..])));
        }
        if !self.pg.contains_canonical(&w[..n - 1]) {
            self.fail(Axiom::Subwords, w, format!("missing {}", self.pg.fmt_word(&w[..n - 1])));
        }
    }

    fn check_contractions(&mut self, w: &[Letter]) {
        let pg = self.pg;
        let Some(total) = pg.fold(w) else {
            self.fail(Axiom::Contraction, w, "left fold undefined");
            return;
        };
        if w.len() < 3 {
            return;
        }
        // Every contraction preserving the left fold implies, by induction on
        // length, that all full contraction orders agree.
        for i in 1..w.len() {
            let Some(p) = pg.product(w[i - 1], w[i]) else {
                self.fail(Axiom::Contraction, w, format!("no product at position {i}"));
                continue;
            };
            let mut c: Word = w[..i - 1].iter().copied().collect();
            if p != UNIT {
                c.push(p);
            }
            c.extend_from(&w[i + 1..]);
            if !pg.contains_canonical(&c) {
                self.fail(Axiom::Contraction, w, format!("contraction {} missing", pg.fmt_word(&c)));
            } else if pg.fold(&c) != Some(total) {
                self.fail(Axiom::Contraction, w, format!("contraction at {i} changes the product"));
            }
        }
    }

    fn check_inversion(&mut self, w: &[Letter]) {
        let pg = self.pg;
        let v = pg.invert_word(w);
        if !pg.contains_canonical(&v) {
            self.fail(Axiom::Inversion, w, format!("inverse word {} missing", pg.fmt_word(&v)));
            return;
        }
        match (pg.fold(w), pg.fold(&v)) {
            (Some(a), Some(b)) if pg.inv(a) == b => {}
            _ => self.fail(Axiom::Inversion, w, "product of the inverse word is not the inverse"),
        }
    }

    fn check_inverse_word(&mut self, u: &[Letter]) {
        let pg = self.pg;
        let v = pg.invert_word(u).concat(u);
        if !pg.contains_canonical(&v) {
            self.fail(Axiom::InverseWord, &v, format!("not a member, though {} is", pg.fmt_word(u)));
        } else if pg.fold(&v) != Some(UNIT) {
            self.fail(Axiom::InverseWord, &v, "product is not 1".to_string());
        }
    }
}
