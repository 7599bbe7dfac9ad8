//! Line-oriented text formats.
//!
//! Every format has one declaration per line, `#` starts a comment, element
//! names are bare tokens and words are space-separated token lists. Products
//! are written `a b = c`.

mod bundle;
mod pg;
mod report;
mod table;

use std::path::Path;

use crate::error::{Error, Result};

pub use bundle::{load_bundle, parse_bundle, Bundle, BundleKind, ResolvedBundle};
pub use pg::{load_pg, parse_pg, serialize_pg, PgFile};
pub use report::Report;
pub use table::{load_table, parse_table, serialize_table};

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

/// A non-blank line with its comment stripped, split into the leading token
/// and the remaining tokens.
pub(crate) struct Line<'a> {
    pub no: usize,
    pub head: &'a str,
    pub rest: Vec<&'a str>,
}

pub(crate) struct Source<'a> {
    pub file: &'a str,
}

impl<'a> Source<'a> {
    pub fn err(&self, line: usize, msg: impl Into<String>) -> Error {
        Error::Parse { file: self.file.to_string(), line, msg: msg.into() }
    }

    pub fn lines(text: &'a str) -> impl Iterator<Item = Line<'a>> {
        text.lines().enumerate().filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let mut tokens = body.split_whitespace();
            let head = tokens.next()?;
            Some(Line { no: i + 1, head, rest: tokens.collect() })
        })
    }
}

/// Splits `lhs.. = rhs` at the single `=` token.
pub(crate) fn split_eq<'t>(tokens: &[&'t str]) -> Option<(Vec<&'t str>, &'t str)> {
    let at = tokens.iter().position(|&t| t == "=")?;
    match &tokens[at + 1..] {
        [rhs] => Some((tokens[..at].to_vec(), rhs)),
        _ => None,
    }
}
