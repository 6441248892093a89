use std::sync::OnceLock;

use brauer::ainf::{
    build_category, polygon_disc, trivial_extension, verify_relations, GradedArcSystem, FROZEN_CONVENTION,
};
use brauer::bgfile;
use brauer::invariants::invariant_bundle;
use brauer::kauer::{cartan_consistent, classify_edge, kauer_move, mutation_search, replay, SearchOutcome};
use brauer::ribbon::{canonical_form, enumerate, BrauerGraph, HalfEdge};
use proptest::prelude::*;

fn graphs() -> &'static [BrauerGraph] {
    static G: OnceLock<Vec<BrauerGraph>> = OnceLock::new();
    G.get_or_init(|| enumerate(4, 2))
}

fn sphere_graphs() -> &'static [BrauerGraph] {
    static G: OnceLock<Vec<BrauerGraph>> = OnceLock::new();
    G.get_or_init(|| {
        enumerate(4, 1)
            .into_iter()
            .filter(|g| g.edge_count() >= 2 && g.genus() == Ok(0))
            .collect()
    })
}

/// A graph from the enumeration with a permutation of its half-edges.
fn relabeled_graph() -> impl Strategy<Value = (BrauerGraph, Vec<HalfEdge>)> {
    (0..graphs().len()).prop_flat_map(|i| {
        let g = graphs()[i].clone();
        let n = g.ribbon().half_edge_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Disc degree vectors with entries in -1..=2 summing to n - 2.
fn disc_degrees() -> impl Strategy<Value = Vec<i64>> {
    (3usize..=5)
        .prop_flat_map(|n| proptest::collection::vec(-1i64..=2, n - 1))
        .prop_filter_map("last entry out of range", |mut v| {
            let n = v.len() as i64 + 1;
            let last = n - 2 - v.iter().sum::<i64>();
            (-1..=2).contains(&last).then(|| {
                v.push(last);
                v
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labels((g, map) in relabeled_graph()) {
        let h = g.relabel(&map);
        prop_assert_eq!(canonical_form(&h), canonical_form(&g));
        prop_assert_eq!(invariant_bundle(&h), invariant_bundle(&g));
    }

    #[test]
    fn files_round_trip((g, map) in relabeled_graph()) {
        let h = g.relabel(&map);
        let back = bgfile::parse(&bgfile::write(&h)).unwrap();
        prop_assert_eq!(canonical_form(&back), canonical_form(&g));
    }

    #[test]
    fn mirror_keeps_invariants((g, map) in relabeled_graph()) {
        let m = g.mirror().relabel(&map);
        prop_assert_eq!(invariant_bundle(&m), invariant_bundle(&g));
        prop_assert_eq!(canonical_form(&m.mirror()), canonical_form(&g));
    }

    #[test]
    fn kauer_moves_keep_invariants((g, map) in relabeled_graph(), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.edge_count() >= 2);
        let h = g.relabel(&map);
        let e = pick.index(h.edge_count());
        classify_edge(&h, e).unwrap();
        let (moved, descriptor) = kauer_move(&h, e).unwrap();
        prop_assert_eq!(invariant_bundle(&moved), invariant_bundle(&h));
        prop_assert!(cartan_consistent(&h, &moved, &descriptor));
    }

    #[test]
    fn search_sequences_replay(i in 0..sphere_graphs().len(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let g = &sphere_graphs()[i];
        let mut target = g.clone();
        for p in &picks {
            target = kauer_move(&target, p.index(target.edge_count())).unwrap().0;
        }
        match mutation_search(g, &target, 12) {
            SearchOutcome::Found(seq) => {
                prop_assert!(seq.steps.len() <= picks.len());
                let edges: Vec<String> = seq.steps.iter().map(|s| s.edge.clone()).collect();
                prop_assert_eq!(canonical_form(&replay(g, &edges).unwrap()), canonical_form(&target));
            }
            other => prop_assert!(false, "search failed: {:?}", other),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn seed_categories_are_graded_and_unital(i in 0..graphs().len()) {
        let g = &graphs()[i];
        prop_assume!(g.edge_count() <= 3);
        let c = build_category(&GradedArcSystem::seed(g).unwrap(), FROZEN_CONVENTION).category;
        prop_assert_eq!(c.degree_violation(), None);
        prop_assert_eq!(c.unitality_violation(), None);
        let t = trivial_extension(&c, FROZEN_CONVENTION);
        prop_assert_eq!(t.degree_violation(), None);
        prop_assert_eq!(t.dimension(), 2 * c.dimension());
    }

    #[test]
    fn disc_gradings_satisfy_the_relations(degrees in disc_degrees()) {
        let s = polygon_disc(&degrees);
        let b = build_category(&s, FROZEN_CONVENTION);
        prop_assert!(b.conflicts.is_empty());
        prop_assert_eq!(b.category.degree_violation(), None);
        prop_assert_eq!(b.category.unitality_violation(), None);
        let r = verify_relations(&b.category, None);
        prop_assert!(r.passed(), "{:?}", r.failure);
        let t = trivial_extension(&b.category, FROZEN_CONVENTION);
        let r = verify_relations(&t, None);
        prop_assert!(r.passed(), "{:?}", r.failure);
    }
}
