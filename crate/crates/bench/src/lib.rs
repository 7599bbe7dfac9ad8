//! Shared fixtures for the criterion benchmarks.

use std::sync::Arc;

use pgx_core::{automorphisms, bar_construction, AutData, GroupTable, OuterAction, PartialGroup};

pub fn bar(g: &GroupTable, level: usize) -> Arc<PartialGroup> {
    Arc::new(bar_construction(g, level).expect("bar construction"))
}

pub fn aut(pg: &Arc<PartialGroup>) -> Arc<AutData> {
    Arc::new(automorphisms(pg).expect("automorphisms"))
}

/// `Z/3` over `Z/2` with the inversion action, at `level`.
pub fn inversion(level: usize) -> (Arc<AutData>, Arc<PartialGroup>, OuterAction) {
    let base = bar(&GroupTable::cyclic(2), level);
    let fiber = aut(&bar(&GroupTable::cyclic(3), level));
    let alpha = OuterAction::new(&base, &fiber, vec![0, 1]).expect("inversion is an outer action");
    (fiber, base, alpha)
}
