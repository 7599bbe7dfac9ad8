//! Files that tie a fiber and a base together: twisting pairs, actions for
//! semidirect products, outer actions, and extensions.
//!
//! ```text
//! extension
//! fiber z3.pg
//! base z2.pg
//! t b = 1 a2 a
//! eta b b = a
//! ```
//!
//! `fiber` and `base` are paths relative to the file; a command line may
//! supply them instead. A `t` line lists the
//! images of the fiber elements in declaration order; base letters without
//! one act trivially. `eta` lines give the non-unit labels. Outer action
//! files use `alpha g = k` with `k` the index of an outer class, classes
//! being ordered by their least member.

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ext::{semidirect, twisted_product, Extension, OuterAction, TwistingPair};
use crate::io::{read_file, Source};
use crate::io::pg::{load_pg, PgFile};
use crate::maps::aut::{automorphisms, AutData};
use crate::partial_group::PartialGroup;
use crate::word::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BundleKind {
    Pair,
    Action,
    Outer,
    Extension,
}

impl BundleKind {
    fn keyword(self) -> &'static str {
        match self {
            BundleKind::Pair => "pair",
            BundleKind::Action => "action",
            BundleKind::Outer => "outer",
            BundleKind::Extension => "extension",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle {
    pub kind: BundleKind,
    pub fiber: String,
    pub base: String,
    /// `(line, g, images)`.
    pub twists: Vec<(usize, String, Vec<String>)>,
    /// `(line, g, h, label)`.
    pub eta: Vec<(usize, String, String, String)>,
    /// `(line, g, class)`.
    pub alpha: Vec<(usize, String, usize)>,
}

pub fn parse_bundle(text: &str, file: &str) -> Result<Bundle> {
    let src = Source { file };
    let mut lines = Source::lines(text);
    let first = lines.next().ok_or_else(|| src.err(1, "empty file"))?;
    let kind = [BundleKind::Pair, BundleKind::Action, BundleKind::Outer, BundleKind::Extension]
        .into_iter()
        .find(|k| k.keyword() == first.head && first.rest.is_empty())
        .ok_or_else(|| src.err(first.no, "expected `pair`, `action`, `outer` or `extension`"))?;
    let mut fiber = None;
    let mut base = None;
    let mut out = Bundle { kind, fiber: String::new(), base: String::new(), twists: vec![], eta: vec![], alpha: vec![] };
    for line in lines {
        let allowed = match line.head {
            "fiber" | "base" => true,
            "t" => kind != BundleKind::Outer,
            "eta" => matches!(kind, BundleKind::Pair | BundleKind::Extension),
            "alpha" => kind == BundleKind::Outer,
            _ => false,
        };
        if !allowed {
            return Err(src.err(line.no, format!("unexpected `{}` in a {} file", line.head, kind.keyword())));
        }
        let owned = |v: &[&str]| v.iter().map(|t| t.to_string()).collect::<Vec<_>>();
        match (line.head, line.rest.as_slice()) {
            ("fiber", [p]) if fiber.is_none() => fiber = Some(p.to_string()),
            ("base", [p]) if base.is_none() => base = Some(p.to_string()),
            ("t", [g, "=", images @ ..]) if !images.is_empty() => out.twists.push((line.no, g.to_string(), owned(images))),
            ("eta", [g, h, "=", x]) => out.eta.push((line.no, g.to_string(), h.to_string(), x.to_string())),
            ("alpha", [g, "=", k]) => {
                let k = k.parse().map_err(|_| src.err(line.no, "outer class must be a number"))?;
                out.alpha.push((line.no, g.to_string(), k));
            }
            _ => return Err(src.err(line.no, format!("malformed `{}` line", line.head))),
        }
    }
    out.fiber = fiber.unwrap_or_default();
    out.base = base.unwrap_or_default();
    Ok(out)
}

/// A bundle with its referenced files loaded.
#[derive(Debug, Clone)]
pub struct ResolvedBundle {
    pub kind: BundleKind,
    pub fiber_file: PgFile,
    pub base_file: PgFile,
    pub fiber: Arc<AutData>,
    pub base: Arc<PartialGroup>,
    pub twists: Vec<usize>,
    pub eta: Vec<((Letter, Letter), Letter)>,
    pub alpha: Vec<usize>,
}

impl Bundle {
    /// Loads the referenced files, or `fiber` and `base` when given.
    pub fn resolve(
        &self,
        dir: &Path,
        file: &str,
        level: Option<usize>,
        fiber: Option<&Path>,
        base: Option<&Path>,
    ) -> Result<ResolvedBundle> {
        let src = Source { file };
        let locate = |given: Option<&Path>, reference: &str, what: &str| match given {
            Some(p) => Ok(p.to_path_buf()),
            None if reference.is_empty() => Err(src.err(0, format!("no `{what}` line"))),
            None => Ok(dir.join(reference)),
        };
        let (fiber_file, m) = load_pg(&locate(fiber, &self.fiber, "fiber")?, level)?;
        let (base_file, h) = load_pg(&locate(base, &self.base, "base")?, level)?;
        m.pg.validate().into_result()?;
        h.pg.validate().into_result()?;
        let m = Arc::new(m.pg);
        let h = Arc::new(h.pg);
        let aut = Arc::new(automorphisms(&m)?);
        let elem = |pg: &PartialGroup, line: usize, t: &str| {
            pg.index_of(t).ok_or_else(|| src.err(line, format!("unknown element {t:?}")))
        };

        let mut twists = vec![0; h.size()];
        for (line, g, images) in &self.twists {
            let g = elem(&h, *line, g)?;
            if images.len() != m.size() {
                return Err(src.err(*line, format!("expected {} images", m.size())));
            }
            let perm = images.iter().map(|t| elem(&m, *line, t)).collect::<Result<Vec<_>>>()?;
            twists[g as usize] =
                aut.index_of(&perm).ok_or_else(|| src.err(*line, "images are not a fiber automorphism"))?;
        }
        let eta = self
            .eta
            .iter()
            .map(|(line, g, k, x)| Ok(((elem(&h, *line, g)?, elem(&h, *line, k)?), elem(&m, *line, x)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut alpha = vec![0; h.size()];
        for (line, g, k) in &self.alpha {
            if *k >= aut.out_order() {
                return Err(src.err(*line, format!("there are only {} outer classes", aut.out_order())));
            }
            alpha[elem(&h, *line, g)? as usize] = *k;
        }
        Ok(ResolvedBundle { kind: self.kind, fiber_file, base_file, fiber: aut, base: h, twists, eta, alpha })
    }

    /// Writes a pair, action or extension file for `pair`.
    pub fn from_pair(kind: BundleKind, fiber: &str, base: &str, pair: &TwistingPair) -> Self {
        let (m, h) = (pair.fiber(), pair.base());
        let twists = h
            .letters()
            .map(|g| (0, h.name(g).to_string(), pair.twist_perm(g).iter().map(|&x| m.name(x).to_string()).collect()))
            .collect();
        let eta = pair
            .eta_entries()
            .into_iter()
            .map(|((g, k), x)| (0, h.name(g).to_string(), h.name(k).to_string(), m.name(x).to_string()))
            .collect();
        Bundle { kind, fiber: fiber.into(), base: base.into(), twists, eta, alpha: vec![] }
    }

    pub fn from_outer(fiber: &str, base: &str, h: &PartialGroup, alpha: &OuterAction) -> Self {
        let alpha = h.letters().map(|g| (0, h.name(g).to_string(), alpha.class(g))).collect();
        Bundle { kind: BundleKind::Outer, fiber: fiber.into(), base: base.into(), twists: vec![], eta: vec![], alpha }
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("{}\n", self.kind.keyword());
        for (key, path) in [("fiber", &self.fiber), ("base", &self.base)] {
            if !path.is_empty() {
                out.push_str(&format!("{key} {path}\n"));
            }
        }
        for (_, g, images) in &self.twists {
            out.push_str(&format!("t {g} = {}\n", images.join(" ")));
        }
        for (_, g, h, x) in &self.eta {
            out.push_str(&format!("eta {g} {h} = {x}\n"));
        }
        for (_, g, k) in &self.alpha {
            out.push_str(&format!("alpha {g} = {k}\n"));
        }
        out
    }
}

impl ResolvedBundle {
    pub fn pair(&self) -> Result<TwistingPair> {
        if self.kind == BundleKind::Outer {
            return Err(Error::Validation("an outer action file has no twisting pair".into()));
        }
        TwistingPair::new(self.base.clone(), self.fiber.clone(), self.twists.clone(), self.eta.iter().copied())
    }

    /// The pair without the cocycle and multiplicativity checks, so that a
    /// broken file can still be diagnosed.
    pub fn pair_unchecked(&self) -> Result<TwistingPair> {
        TwistingPair::new_unchecked(self.base.clone(), self.fiber.clone(), self.twists.clone(), self.eta.iter().copied())
    }

    pub fn extension(&self) -> Result<Extension> {
        match self.kind {
            BundleKind::Action => semidirect(self.base.clone(), self.fiber.clone(), self.twists.clone()),
            _ => twisted_product(&self.pair()?),
        }
    }

    pub fn outer(&self) -> Result<OuterAction> {
        if self.kind != BundleKind::Outer {
            return Err(Error::Validation("not an outer action file".into()));
        }
        OuterAction::new(&self.base, &self.fiber, self.alpha.clone())
    }

    pub fn fiber_pg(&self) -> &Arc<PartialGroup> {
        self.fiber.partial_group()
    }
}

/// Reads a bundle file and loads the files it references, unless `fiber`
/// and `base` override them.
pub fn load_bundle(
    path: &Path,
    level: Option<usize>,
    fiber: Option<&Path>,
    base: Option<&Path>,
) -> Result<ResolvedBundle> {
    let name = path.display().to_string();
    let bundle = parse_bundle(&read_file(path)?, &name)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    bundle.resolve(&dir, &name, level, fiber, base)
}

