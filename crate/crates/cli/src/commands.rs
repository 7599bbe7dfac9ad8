use std::path::{Path, PathBuf};
use std::sync::Arc;

use pgx_core::coh::{brute_force_cohomology, build_complex_to, classify_extensions, CoefficientModule};
use pgx_core::ext::{find_equivalence, semidirect, twisted_product, Extension};
use pgx_core::io::{load_bundle, load_pg, load_table, parse_pg, read_file, serialize_pg, write_file, Bundle, BundleKind, Report, ResolvedBundle};
use pgx_core::maps::{automorphisms, pi_report};
use pgx_core::sect::{find_sections, h1_nonabelian, h1_correspondence, regular_split_normalize, section_classes};
use pgx_core::{bar_construction, Error, ErrorKind, Letter, PartialGroup, Result, ValidationReport};

use crate::Command;

pub struct Outcome {
    pub report: Report,
    /// Set when the report was produced but the command still fails.
    pub failure: Option<Error>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, failure: None }
    }
}

pub fn run(command: Command, level: Option<usize>) -> Result<Outcome> {
    match command {
        Command::Validate { pg } => validate(&pg, level),
        Command::Info { pg } => info(&pg, level).map(Into::into),
        Command::Bar { group, out } => bar(&group, level, &out).map(Into::into),
        Command::Extend { fiber, base, pair, out } => {
            let b = load_bundle(&pair, level, Some(&fiber), Some(&base))?;
            expect_kind(&b, &[BundleKind::Pair, BundleKind::Extension], &pair)?;
            let ext = twisted_product(&b.pair()?)?;
            write_extension(&ext, &fiber, &base, &out).map(Into::into)
        }
        Command::Semidirect { fiber, base, action, out } => {
            let b = load_bundle(&action, level, Some(&fiber), Some(&base))?;
            expect_kind(&b, &[BundleKind::Action], &action)?;
            let ext = semidirect(b.base.clone(), b.fiber.clone(), b.twists.clone())?;
            write_extension(&ext, &fiber, &base, &out).map(Into::into)
        }
        Command::Classify { fiber, base, outer, out_dir } => {
            classify(&fiber, &base, &outer, out_dir.as_deref(), level).map(Into::into)
        }
        Command::Cohomology { base, coeff_from, outer, deg, oracle } => {
            cohomology(&base, &coeff_from, &outer, deg, oracle, level)
        }
        Command::Sections { ext, classes } => sections(&ext, classes, level).map(Into::into),
        Command::Equiv { first, second } => equiv(&first, &second, level).map(Into::into),
    }
}

fn expect_kind(b: &ResolvedBundle, kinds: &[BundleKind], path: &Path) -> Result<()> {
    if kinds.contains(&b.kind) {
        Ok(())
    } else {
        Err(Error::Validation(format!("{} is a {:?} file", path.display(), b.kind)))
    }
}

fn plural(n: usize, noun: &str) -> String {
    format!("{n} {noun}{}", if n == 1 { "" } else { "s" })
}

fn names(pg: &PartialGroup, xs: impl IntoIterator<Item = Letter>) -> String {
    xs.into_iter().map(|x| pg.name(x).to_string()).collect::<Vec<_>>().join(" ")
}

fn list<T: std::fmt::Display>(xs: &[T]) -> String {
    format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn census(pg: &PartialGroup) -> String {
    pg.domain_sizes().iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn push_validation(r: &mut Report, v: &ValidationReport, pg: &PartialGroup) {
    r.push("words-checked", v.words_checked);
    r.push("violations", v.violation_count);
    for x in &v.violations {
        r.push("violation", format!("{} {} {}", x.axiom, pg.fmt_word(&x.word), x.detail));
    }
    for s in &v.skipped {
        r.push("skipped", format!("{} length {} count {}", s.axiom, s.length, s.count));
    }
    r.push("status", if v.is_ok() { "ok" } else { "failed" });
}

fn validation_failure(v: &ValidationReport, pg: &PartialGroup) -> Error {
    let first = v.first().expect("failed report has a violation");
    Error::Validation(format!("{} violated at {}", first.axiom, pg.fmt_word(&first.word)))
}

fn validate(path: &Path, level: Option<usize>) -> Result<Outcome> {
    let file = parse_pg(&read_file(path)?, &path.display().to_string())?;
    let mut r = Report::new();
    r.push("file", path.display());
    r.push("level", file.effective_level(level));
    match file.load(level) {
        Ok(sat) => {
            let v = sat.pg.validate();
            r.push("complete", yes(sat.pg.is_complete()));
            r.push("overflow", sat.overflow.len());
            push_validation(&mut r, &v, &sat.pg);
            let failure = (!v.is_ok()).then(|| validation_failure(&v, &sat.pg));
            Ok(Outcome { report: r, failure })
        }
        Err(err) if err.kind() == ErrorKind::Validation => {
            // the closure refused; report what the declarations themselves break
            let raw = file.raw(level).map_err(|_| err)?;
            let v = raw.validate();
            r.push("closure", "refused");
            push_validation(&mut r, &v, &raw);
            let failure = if v.is_ok() {
                Error::Validation("declarations are consistent but cannot be closed".into())
            } else {
                validation_failure(&v, &raw)
            };
            Ok(Outcome { report: r, failure: Some(failure) })
        }
        Err(err) => Err(err),
    }
}

fn info(path: &Path, level: Option<usize>) -> Result<Report> {
    let (file, sat) = load_pg(path, level)?;
    let v = sat.pg.validate();
    if !v.is_ok() {
        return Err(validation_failure(&v, &sat.pg));
    }
    let pg = Arc::new(sat.pg);
    let aut = automorphisms(&pg)?;
    let n = aut.normalizer();
    let pi = pi_report(&aut);
    let mut r = Report::new();
    r.push("name", &file.name);
    r.push("level", pg.level());
    r.push("complete", yes(pg.is_complete()));
    r.push("elements", pg.size());
    r.push("domain", census(&pg));
    r.push("N", plural(n.order(), "element"));
    r.push("N-members", names(&pg, n.elements.iter().copied()));
    r.push("N-exact", yes(n.exact));
    r.push("Z", plural(aut.center().len(), "element"));
    r.push("Z-members", names(&pg, aut.center().iter().copied()));
    r.push("Aut", format!("order {}", aut.order()));
    r.push("Out", format!("order {}", aut.out_order()));
    r.push("exact-sequence", yes(aut.exactness_holds()));
    r.push("pi0", format!("{} (order {})", pi.pi0, pi.pi0_order));
    r.push("pi1", format!("{} (order {})", pi.pi1, pi.pi1_order));
    Ok(r)
}

fn bar(group: &Path, level: Option<usize>, out: &Path) -> Result<Report> {
    let (name, g) = load_table(group)?;
    let level = level.unwrap_or_else(pgx_core::default_level);
    let pg = bar_construction(&g, level)?;
    write_file(out, &serialize_pg(&name, &pg))?;
    let mut r = Report::new();
    r.push("name", name);
    r.push("level", level);
    r.push("elements", pg.size());
    r.push("domain", census(&pg));
    r.push("wrote", out.display());
    Ok(r)
}

/// `target` as seen from the directory that will hold `file`.
fn reference(target: &Path, file: &Path) -> Result<String> {
    fn canonical(p: &Path) -> Result<PathBuf> {
        std::fs::canonicalize(p).map_err(|source| Error::Io { path: p.display().to_string(), source })
    }
    let target = canonical(target)?;
    let dir = match file.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let dir = canonical(&dir)?;
    let rel = pathdiff::diff_paths(&target, &dir).unwrap_or(target);
    let text = rel.to_string_lossy().replace('\\', "/");
    if text.chars().any(char::is_whitespace) {
        return Err(Error::Validation(format!("path {text:?} contains whitespace")));
    }
    Ok(text)
}

fn extension_report(r: &mut Report, ext: &Extension) {
    r.push("fiber", ext.fiber().size());
    r.push("base", ext.base().size());
    r.push("total", ext.total().size());
    r.push("domain", census(ext.total()));
    r.push("eta", ext.pair().fmt_eta());
}

fn write_extension(ext: &Extension, fiber: &Path, base: &Path, out: &Path) -> Result<Report> {
    let bundle = Bundle::from_pair(BundleKind::Extension, &reference(fiber, out)?, &reference(base, out)?, ext.pair());
    write_file(out, &bundle.serialize())?;
    let mut r = Report::new();
    extension_report(&mut r, ext);
    r.push("validation", "ok");
    r.push("inverse-law", "ok");
    r.push("wrote", out.display());
    Ok(r)
}

fn load_outer(
    outer: &Path,
    fiber: &Path,
    base: &Path,
    level: Option<usize>,
) -> Result<(ResolvedBundle, pgx_core::OuterAction)> {
    let b = load_bundle(outer, level, Some(fiber), Some(base))?;
    expect_kind(&b, &[BundleKind::Outer], outer)?;
    let alpha = b.outer()?;
    Ok((b, alpha))
}

fn classify(fiber: &Path, base: &Path, outer: &Path, out_dir: Option<&Path>, level: Option<usize>) -> Result<Report> {
    let (b, alpha) = load_outer(outer, fiber, base, level)?;
    let c = classify_extensions(&b.fiber, &b.base, &alpha)?;
    let ob = &c.obstruction;
    let mut r = Report::new();
    r.push("alpha", list(alpha.classes()));
    r.push("lift", list(&ob.twist));
    r.push("kappa-support", ob.kappa_letters().len());
    r.push("kappa", if ob.class_is_zero { "zero" } else { "nonzero" });
    match &c.h2 {
        Some(h2) => r.push("H2", list(&h2.factors)),
        None => r.push("H2", "-"),
    };
    r.push("classes", c.classes.len());
    for (i, class) in c.classes.iter().enumerate() {
        r.push("class", format!("{i} coords {} eta {}", list(&class.coords), class.ext.pair().fmt_eta()));
        if let Some(dir) = out_dir {
            std::fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.display().to_string(), source })?;
            let path = dir.join(format!("class-{i}.ext"));
            let bundle =
                Bundle::from_pair(BundleKind::Extension, &reference(fiber, &path)?, &reference(base, &path)?, class.ext.pair());
            write_file(&path, &bundle.serialize())?;
            r.push("wrote", path.display());
        }
    }
    Ok(r)
}

fn cohomology(base: &Path, coeff: &Path, outer: &Path, deg: usize, oracle: bool, level: Option<usize>) -> Result<Outcome> {
    let (b, alpha) = load_outer(outer, coeff, base, level)?;
    let module = Arc::new(CoefficientModule::new(b.fiber.clone())?);
    let complex = build_complex_to(b.base.clone(), module.clone(), &alpha, deg + 1)?;
    let h = complex.cohomology(deg)?;
    let mut r = Report::new();
    r.push("degree", deg);
    r.push("coefficients", list(module.factors()));
    r.push("cochains", complex.cochain_count(deg));
    r.push("factors", list(&h.factors));
    r.push("order", h.order());
    for (i, rep) in h.representatives.iter().enumerate() {
        r.push("representative", format!("{i} {}", list(rep)));
    }
    let mut failure = None;
    if oracle {
        match brute_force_cohomology(&complex, deg)? {
            None => r.push("oracle", "skipped"),
            Some(o) => {
                r.push("oracle-cocycles", o.cocycles);
                r.push("oracle-coboundaries", o.coboundaries);
                r.push("oracle-order", o.order());
                if o.agrees_with(&h) {
                    r.push("oracle", "agrees")
                } else {
                    failure = Some(Error::Internal("Smith form and enumeration disagree".into()));
                    r.push("oracle", "disagrees")
                }
            }
        };
    }
    Ok(Outcome { report: r, failure })
}

fn load_extension(path: &Path, level: Option<usize>) -> Result<Extension> {
    let b = load_bundle(path, level, None, None)?;
    expect_kind(&b, &[BundleKind::Extension, BundleKind::Pair], path)?;
    twisted_product(&b.pair()?)
}

fn theta_text(ext: &Extension, theta: &[Letter]) -> String {
    let (m, h) = (ext.fiber(), ext.base());
    h.letters().map(|g| format!("{}>{}", h.name(g), m.name(theta[g as usize]))).collect::<Vec<_>>().join(" ")
}

fn sections(path: &Path, classes: bool, level: Option<usize>) -> Result<Report> {
    let ext = load_extension(path, level)?;
    let found = find_sections(&ext)?;
    let mut r = Report::new();
    r.push("sections", found.len());
    for (i, s) in found.iter().enumerate() {
        r.push("section", format!("{i} {} regular {}", theta_text(&ext, &s.theta), yes(s.regular)));
    }
    if !classes {
        return Ok(r);
    }
    let cls = section_classes(&ext, &found);
    r.push("classes", cls.len());
    for (i, c) in cls.iter().enumerate() {
        r.push("class", format!("{i} {}", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")));
    }
    match found.iter().find(|s| s.regular) {
        None => r.push("regular-split", "no"),
        Some(s) => {
            let split = regular_split_normalize(&ext, s)?;
            let h1 = h1_nonabelian(ext.base(), ext.fiber_aut(), &split.rho)?;
            h1_correspondence(&ext, &split, &found, &cls, &h1)?;
            r.push("regular-split", "yes");
            r.push("derivations", h1.derivations.len());
            r.push("H1", h1.classes.len());
            r.push("H1-correspondence", "ok")
        }
    };
    Ok(r)
}

fn equiv(first: &Path, second: &Path, level: Option<usize>) -> Result<Report> {
    let a = load_extension(first, level)?;
    let b = load_extension(second, level)?;
    let mut r = Report::new();
    match find_equivalence(&a, &b)? {
        None => r.push("equivalence", "none"),
        Some(eq) => r.push("equivalence", "found").push("theta", theta_text(&a, &eq.theta)),
    };
    Ok(r)
}

