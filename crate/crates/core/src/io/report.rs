use std::fmt;

use crate::error::{Error, Result};

/// An ordered block of `key: value` lines. Keys may repeat.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        let key = key.into();
        debug_assert!(!key.contains(':') && !key.contains('\n'));
        let value = value.to_string().replace('\n', " ");
        self.entries.push((key, value));
        self
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// First value under `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.entries.iter().filter(move |(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Report::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (k, v) = line.split_once(": ").or_else(|| line.strip_suffix(':').map(|k| (k, ""))).ok_or_else(|| {
                Error::Parse { file: "<report>".into(), line: i + 1, msg: "expected `key: value`".into() }
            })?;
            out.entries.push((k.to_string(), v.to_string()));
        }
        Ok(out)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}
