use std::collections::HashSet;
use std::sync::Arc;

use proptest::prelude::*;

use pgx_core::coh::lattice::{Howell, Smith};
use pgx_core::ext::{all_outer_actions, check_twisting_function};
use pgx_core::io::{parse_pg, serialize_pg};
use pgx_core::sect::{derivation_to_section, find_sections, section_to_derivation};
use pgx_core::{automorphisms, bar_construction, saturate, semidirect, GroupTable, Seeds, TwistingPair};
use pgx_core::{Letter, Word};

/// Every element of the span of `rows` in `(Z/e)^width`, by closing under
/// addition of generators.
fn span(rows: &[Vec<u64>], width: usize, e: u64) -> HashSet<Vec<u64>> {
    let mut seen: HashSet<Vec<u64>> = HashSet::from([vec![0; width]]);
    let mut frontier = vec![vec![0; width]];
    while let Some(v) = frontier.pop() {
        for r in rows {
            let w: Vec<u64> = v.iter().zip(r).map(|(a, b)| (a + b) % e).collect();
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen
}

fn matrix() -> impl Strategy<Value = (u64, usize, Vec<Vec<u64>>)> {
    (prop::sample::select(vec![2u64, 4, 6, 8, 12]), 1usize..=3).prop_flat_map(|(e, width)| {
        (Just(e), Just(width), prop::collection::vec(prop::collection::vec(0..e, width), 0..5))
    })
}

fn group() -> impl Strategy<Value = GroupTable> {
    prop::sample::select(vec![
        GroupTable::cyclic(3),
        GroupTable::cyclic(4),
        GroupTable::klein(),
        GroupTable::symmetric3(),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn howell_membership_is_span_membership((e, width, rows) in matrix(), probe in prop::collection::vec(0u64..12, 3)) {
        let h = Howell::new(rows.clone(), width, e);
        let brute = span(&rows, width, e);
        for r in h.rows() {
            prop_assert!(brute.contains(r));
        }
        let v: Vec<u64> = probe[..width].iter().map(|x| x % e).collect();
        prop_assert_eq!(h.contains(&v), brute.contains(&v));
    }

    #[test]
    fn smith_orders_count_the_quotient((e, width, rows) in matrix()) {
        let s = Smith::new(rows.clone(), width, e);
        let quotient = (e as u128).pow(width as u32) / span(&rows, width, e).len() as u128;
        prop_assert_eq!(s.orders.iter().map(|&d| d as u128).product::<u128>(), quotient);
        for pair in s.orders.windows(2) {
            prop_assert_eq!(pair[1] % pair[0], 0);
        }
        prop_assert!(s.orders.iter().all(|&d| d > 1 && e % d == 0));
    }

    #[test]
    fn bar_faces_commute(g in group(), raw in prop::collection::vec(1u16..6, 3..=5), i in 0usize..6, j in 0usize..6) {
        let pg = bar_construction(&g, 5).unwrap();
        let w: Word = raw.iter().map(|&x| x % g.order() as Letter).filter(|&x| x != 0).collect();
        let n = w.len();
        prop_assume!(n >= 2 && i < j && j <= n);
        let lhs = pg.face(&pg.face(&w, j).unwrap(), i).unwrap();
        let rhs = pg.face(&pg.face(&w, i).unwrap(), j - 1).unwrap();
        prop_assert_eq!(lhs.canonical(), rhs.canonical());
        let folded = w.iter().fold(0, |acc, &x| g.mul(acc, x));
        prop_assert_eq!(pg.pi(&w), Some(folded));
    }

    #[test]
    fn closure_of_group_words_is_stable(g in group(), picks in prop::collection::vec(prop::collection::vec(1u16..6, 3..=4), 0..4)) {
        let n = g.order() as Letter;
        let bar = bar_construction(&g, 4).unwrap();
        let words: Vec<Word> = picks
            .iter()
            .map(|p| p.iter().map(|&x| 1 + x % (n - 1)).collect())
            .collect();
        let products = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).map(|(a, b)| (a, b, g.mul(a, b))).collect();
        let seeds = Seeds {
            names: g.names().to_vec(),
            inv: (0..n).map(|x| g.inv(x)).collect(),
            level: 4,
            words,
            products,
            declared_complete: false,
        };
        let first = saturate(&seeds).unwrap().pg;
        prop_assert!(first.validate().is_ok());
        prop_assert!(first.stored_words().all(|w| bar.contains_canonical(w)));

        let again = Seeds { words: first.stored_words().cloned().collect(), ..seeds };
        prop_assert_eq!(&saturate(&again).unwrap().pg, &first);

        let text = serialize_pg("p", &first);
        let back = parse_pg(&text, "p").unwrap().load(None).unwrap().pg;
        prop_assert_eq!(&back, &first);
    }

    #[test]
    fn pair_validation_matches_twisting_function(labels in prop::collection::vec(0u16..2, 9)) {
        let base = Arc::new(bar_construction(&GroupTable::klein(), 4).unwrap());
        let fiber = Arc::new(automorphisms(&Arc::new(bar_construction(&GroupTable::cyclic(2), 4).unwrap())).unwrap());
        let eta: Vec<_> = base.words_of_len(2).iter().zip(&labels).map(|(w, &x)| ((w[0], w[1]), x)).collect();
        let checked = TwistingPair::new(base.clone(), fiber.clone(), vec![0; 4], eta.clone());
        let unchecked = TwistingPair::new_unchecked(base, fiber, vec![0; 4], eta).unwrap();
        let identities = check_twisting_function(&unchecked, 4).unwrap();
        prop_assert_eq!(checked.is_ok(), identities.is_ok());
        if let Err(fail) = identities {
            prop_assert_eq!(fail.identity, 2);
        }
    }

    #[test]
    fn sections_round_trip_through_derivations(base in group(), action in any::<prop::sample::Index>()) {
        let h = Arc::new(bar_construction(&base, 3).unwrap());
        let m = Arc::new(bar_construction(&GroupTable::cyclic(3), 3).unwrap());
        let aut = Arc::new(automorphisms(&m).unwrap());
        let actions = all_outer_actions(&h, &aut);
        let alpha = action.get(&actions);
        let ext = semidirect(h, aut.clone(), alpha.lift(&aut, 0)).unwrap();
        let sections = find_sections(&ext).unwrap();
        prop_assert!(!sections.is_empty());
        for s in &sections {
            let d = section_to_derivation(&ext, s).unwrap();
            prop_assert_eq!(&derivation_to_section(&ext, &d.theta).unwrap(), s);
        }
    }
}
