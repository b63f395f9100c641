use hjsplit::cograph::{is_cograph, Cotree};
use hjsplit::construction::{construct, ConstructionParams};
use hjsplit::embed::{contains_induced, is_isomorphic};
use hjsplit::graph::named::{complete, complete_bipartite, cycle, path, stable, two_k2};
use hjsplit::oracles::{exists_partition, verify_partition, ClassRule};
use hjsplit::partition::{disconnected_partition, two_graphs_partition};
use hjsplit::tournament::{two_tourn_partition, verify_tournament_partition, Tournament};
use hjsplit::{Error, Graph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn cotree() -> impl Strategy<Value = Cotree> {
    let leaf = Just(Cotree::leaf());
    leaf.prop_recursive(4, 12, 3, |inner| {
        (proptest::collection::vec(inner, 2..=3), any::<bool>()).prop_map(|(children, join)| {
            if join {
                Cotree::join(children)
            } else {
                Cotree::union(children)
            }
        })
    })
}

/// Disconnected H paired with anticonnected J.
fn pair() -> impl Strategy<Value = (Graph, Graph)> {
    let hs = [two_k2(), stable(2), complete(2).disjoint_union(&complete(1)), stable(3)];
    let js = [cycle(4), complete(2), path(3), complete_bipartite(1, 3)];
    (0..hs.len(), 0..js.len()).prop_map(move |(a, b)| (hs[a].clone(), js[b].clone()))
}

fn tournament(max_n: usize) -> impl Strategy<Value = Tournament> {
    (1..=max_n, any::<u64>(), 0.0..0.5f64)
        .prop_map(|(n, seed, q)| Tournament::near_transitive(n, q, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cotree_realization_round_trips(t in cotree()) {
        let g = t.realize();
        prop_assert_eq!(g.order(), t.leaves());
        let back = is_cograph(&g).expect("realized cotree is a cograph");
        prop_assert_eq!(back.canonical_form(), t.canonical_form());
        prop_assert_eq!(back.height(), t.height());
        prop_assert!(is_isomorphic(&t.complement().realize(), &g.complement()));
        let json = serde_json::to_string(&t).unwrap();
        let parsed: Cotree = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(parsed, t);
    }

    #[test]
    fn cographs_are_exactly_p4_free(g in graph(8)) {
        prop_assume!(g.order() > 0);
        prop_assert_eq!(is_cograph(&g).is_some(), contains_induced(&g, &path(4)).is_none());
    }

    #[test]
    fn graph_json_round_trips(g in graph(9)) {
        let json = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn pair_partition_is_valid_or_witnessed(g in graph(9), (h, j) in pair()) {
        match two_graphs_partition(&g, &h, &j) {
            Ok(out) => {
                prop_assert!(verify_partition(&g, &out.patterns, &out.partition).unwrap().valid);
                prop_assert!(out.partition.len() as u64 <= out.bound);
            }
            Err(Error::Hypothesis { witness: Some(w), .. }) => {
                let pattern = if w.pattern == "H" { &h } else { &j };
                prop_assert!(contains_induced(&g, pattern).is_some());
                let image = g.induced_on(&w.map);
                prop_assert!((0..pattern.order()).all(|a| (0..pattern.order())
                    .all(|b| a == b || pattern.has_edge(a, b) == image.has_edge(a, b))));
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn driver_partition_is_valid_when_free(g in graph(8), (h, j) in pair()) {
        prop_assume!(contains_induced(&g, &h).is_none() && contains_induced(&g, &j).is_none());
        let out = disconnected_partition(&g, &h, &j).unwrap();
        prop_assert!(verify_partition(&g, &out.patterns, &out.partition).unwrap().valid);
        prop_assert!(out.partition.len() as u128 <= out.class_bound);
    }

    #[test]
    fn enough_classes_always_partition(g in graph(6)) {
        let k = g.order().max(1);
        let p = exists_partition(&g, &[complete(2)], k, ClassRule::Free, 1 << 24).unwrap();
        prop_assert!(p.is_some());
    }

    #[test]
    fn tournament_partition_is_valid(t in tournament(9)) {
        let c3 = Tournament::cyclic_triangle();
        let forbidden = c3.compose(&c3);
        prop_assume!(hjsplit::tournament::contains_subtournament(&t, &forbidden).is_none());
        let out = two_tourn_partition(&t, &c3, &c3).unwrap();
        prop_assert_eq!(verify_tournament_partition(&t, &out.patterns, &out.partition), None);
        prop_assert!(out.partition.len() as u64 <= out.bound);
    }

    #[test]
    fn tournament_reversal_and_composition(t in tournament(8), s in tournament(5)) {
        prop_assert_eq!(t.reverse().reverse(), t.clone());
        let c = t.compose(&s);
        prop_assert_eq!(c.order(), t.order() + s.order());
        prop_assert!(t.vertices().iter().all(|u| (0..s.order()).all(|v| c.beats(u, t.order() + v))));
        prop_assert_eq!(t.reverse().is_transitive(), t.is_transitive());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn construction_is_clean_and_deterministic(seed in any::<u64>(), n in 20usize..90) {
        let k2 = complete(2);
        let params = ConstructionParams::new(n, 5, 2, seed);
        let a = construct(&k2, &k2, &params).unwrap();
        let v = &a.post_removal_violations;
        prop_assert_eq!(v.multilabel + v.two_cycles + v.cycles, 0);
        prop_assert!(a.checks.provenance_unique && a.checks.intersections_at_most_one);
        prop_assert_eq!(a.vertex_ids.len() + a.removed.len(), n);
        let b = construct(&k2, &k2, &params).unwrap();
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
