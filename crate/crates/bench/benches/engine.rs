use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pgx_bench::{aut, bar, inversion};
use pgx_core::coh::{build_complex_to, classify_extensions};
use pgx_core::sect::find_sections;
use pgx_core::{catalog, semidirect, CoefficientModule, GroupTable};
use std::hint::black_box;
use std::sync::Arc;

fn bar_and_validate(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate");
    for (name, g) in [("z4", GroupTable::cyclic(4)), ("s3", GroupTable::symmetric3()), ("d8", GroupTable::dihedral(4))] {
        let pg = bar(&g, 4);
        group.bench_with_input(BenchmarkId::from_parameter(name), &pg, |b, pg| b.iter(|| black_box(pg.validate())));
    }
    group.finish();
}

fn automorphism_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("automorphisms");
    for (name, g) in [("v4", GroupTable::klein()), ("d8", GroupTable::dihedral(4))] {
        let pg = bar(&g, 4);
        group.bench_with_input(BenchmarkId::from_parameter(name), &pg, |b, pg| b.iter(|| aut(pg)));
    }
    let amalgam = Arc::new(catalog::amalgam(6).unwrap());
    group.bench_function("amalgam", |b| b.iter(|| aut(&amalgam)));
    group.finish();
}

fn cohomology(c: &mut Criterion) {
    let base = bar(&GroupTable::klein(), 5);
    let fiber = aut(&bar(&GroupTable::cyclic(4), 5));
    let module = Arc::new(CoefficientModule::new(fiber).unwrap());
    let alpha = pgx_core::OuterAction::trivial(&base);
    let complex = build_complex_to(base, module, &alpha, 4).unwrap();
    let mut group = c.benchmark_group("cohomology_v4_z4");
    for n in 1..=3 {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| complex.cohomology(n).unwrap()));
    }
    group.finish();
}

fn classify(c: &mut Criterion) {
    let (fiber, base, alpha) = inversion(5);
    c.bench_function("classify_z3_by_z2", |b| b.iter(|| classify_extensions(&fiber, &base, &alpha).unwrap()));
}

fn sections(c: &mut Criterion) {
    let base = bar(&GroupTable::symmetric3(), 4);
    let fiber = aut(&bar(&GroupTable::cyclic(3), 4));
    let rho: Vec<usize> = base.names().iter().map(|n| usize::from(n.ends_with('s'))).collect();
    let ext = semidirect(base, fiber, rho).unwrap();
    c.bench_function("sections_z3_by_s3", |b| b.iter(|| find_sections(&ext).unwrap()));
}

criterion_group!(benches, bar_and_validate, automorphism_search, cohomology, classify, sections);
criterion_main!(benches);
