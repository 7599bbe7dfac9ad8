//! Group multiplication tables.
//!
//! ```text
//! group Z2
//! elements 1 a
//! a a = 1
//! ```
//!
//! Products with the unit are implicit; every other pair needs a line.

use std::path::Path;

use crate::error::Result;
use crate::group::GroupTable;
use crate::io::{read_file, split_eq, Source};
use crate::word::Letter;

pub fn parse_table(text: &str, file: &str) -> Result<(String, GroupTable)> {
    let src = Source { file };
    let mut lines = Source::lines(text);
    let first = lines.next().ok_or_else(|| src.err(1, "empty file"))?;
    let name = match (first.head, first.rest.as_slice()) {
        ("group", [name]) => name.to_string(),
        _ => return Err(src.err(first.no, "expected `group <name>`")),
    };
    let mut names: Vec<String> = Vec::new();
    let mut mul: Vec<Option<Letter>> = Vec::new();
    for line in lines {
        if line.head == "elements" {
            if !names.is_empty() {
                return Err(src.err(line.no, "elements declared twice"));
            }
            if line.rest.first() != Some(&"1") {
                return Err(src.err(line.no, "the first element must be the identity `1`"));
            }
            names = line.rest.iter().map(|t| t.to_string()).collect();
            let n = names.len();
            mul = vec![None; n * n];
            for x in 0..n {
                mul[x] = Some(x as Letter);
                mul[x * n] = Some(x as Letter);
            }
            continue;
        }
        if names.is_empty() {
            return Err(src.err(line.no, "product before `elements`"));
        }
        let lookup = |t: &str| {
            names
                .iter()
                .position(|n| n == t)
                .ok_or_else(|| src.err(line.no, format!("unknown element {t:?}")))
        };
        let mut tokens = vec![line.head];
        tokens.extend(&line.rest);
        let Some((lhs, rhs)) = split_eq(&tokens) else {
            return Err(src.err(line.no, "expected `a b = c`"));
        };
        let [a, b] = lhs.as_slice() else {
            return Err(src.err(line.no, "expected `a b = c`"));
        };
        let (a, b, c) = (lookup(a)?, lookup(b)?, lookup(rhs)? as Letter);
        let slot = &mut mul[a * names.len() + b];
        if slot.replace(c).is_some_and(|old| old != c) {
            return Err(src.err(line.no, "conflicting products"));
        }
    }
    if names.is_empty() {
        return Err(src.err(0, "no `elements` line"));
    }
    let n = names.len();
    if let Some(i) = mul.iter().position(Option::is_none) {
        return Err(src.err(0, format!("missing product {} {}", names[i / n], names[i % n])));
    }
    let g = GroupTable::new(names, mul.into_iter().map(|c| c.expect("checked")).collect())?;
    Ok((name, g))
}

pub fn load_table(path: &Path) -> Result<(String, GroupTable)> {
    parse_table(&read_file(path)?, &path.display().to_string())
}

pub fn serialize_table(name: &str, g: &GroupTable) -> String {
    let mut out = format!("group {name}\nelements {}\n", g.names().join(" "));
    for a in 1..g.order() as Letter {
        for b in 1..g.order() as Letter {
            out.push_str(&format!("{} {} = {}\n", g.name(a), g.name(b), g.name(g.mul(a, b))));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = GroupTable::dihedral(4);
        let text = serialize_table("D8", &g);
        let (name, back) = parse_table(&text, "t").unwrap();
        assert_eq!((name.as_str(), &back), ("D8", &g));
    }

    #[test]
    fn incomplete_table_is_rejected() {
        assert!(parse_table("group x\nelements 1 a b\na a = 1\n", "t").is_err());
    }
}
