//! Cross-module property tests: degree identities on random vacuum graphs,
//! canonical-form invariance, melon contraction invariance, and the tree
//! oracle against the closed form.

use on3_core::census::{enumerate_trees, enumerate_vacuum, CensusConfig};
use on3_core::graph::{EdgeColoredGraph, NodeId};
use on3_core::melon::{classify, contract_melon, find_melons, reduce, reduce_reversed, OrderClass, Verdict};
use on3_core::series::c_pq;
use proptest::prelude::*;

/// Skeleton matchings (colors 1..3) for `n1` tetrahedra followed by
/// pillows of each distinguished color.
fn skeleton_matchings(n1: usize, n2: [usize; 3]) -> (usize, [Vec<(NodeId, NodeId)>; 3]) {
    let mut m: [Vec<(NodeId, NodeId)>; 3] = Default::default();
    let mut o = 0;
    for _ in 0..n1 {
        m[0].extend([(o, o + 1), (o + 2, o + 3)]);
        m[1].extend([(o, o + 2), (o + 1, o + 3)]);
        m[2].extend([(o, o + 3), (o + 1, o + 2)]);
        o += 4;
    }
    for (l, &count) in n2.iter().enumerate() {
        for _ in 0..count {
            for (c, pairs) in m.iter_mut().enumerate() {
                if c == l {
                    pairs.extend([(o, o + 2), (o + 1, o + 3)]);
                } else {
                    pairs.extend([(o, o + 1), (o + 2, o + 3)]);
                }
            }
            o += 4;
        }
    }
    (o, m)
}

fn vacuum_graph(n1: usize, n2: [usize; 3], order: &[NodeId]) -> EdgeColoredGraph {
    let (n, m) = skeleton_matchings(n1, n2);
    assert_eq!(order.len(), n);
    let pairs: Vec<(NodeId, NodeId)> = order.chunks(2).map(|c| (c[0], c[1])).collect();
    EdgeColoredGraph::from_matchings(n, [&pairs, &m[0], &m[1], &m[2]]).unwrap()
}

/// A random vacuum graph (shuffled color-0 pairing over a random bubble
/// content) together with a random node permutation of the same size.
fn graph_and_perm() -> impl Strategy<Value = (EdgeColoredGraph, Vec<NodeId>)> {
    (0usize..=2, 0usize..=1, 0usize..=1, 0usize..=1)
        .prop_filter("at least one bubble", |(a, b, c, d)| a + b + c + d > 0)
        .prop_flat_map(|(n1, b, c, d)| {
            let n = 4 * (n1 + b + c + d);
            let ids: Vec<NodeId> = (0..n).collect();
            (
                Just((n1, [b, c, d])),
                Just(ids.clone()).prop_shuffle(),
                Just(ids).prop_shuffle(),
            )
        })
        .prop_map(|((n1, n2), order, perm)| (vacuum_graph(n1, n2, &order), perm))
}

fn graph_strategy() -> impl Strategy<Value = EdgeColoredGraph> {
    graph_and_perm().prop_map(|(g, _)| g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degree_identities(g in graph_strategy()) {
        let deg = g.degree().unwrap();
        // The two formulas agree (checked inside degree()) and the result
        // is a nonnegative half-integer.
        prop_assert_eq!(deg.omega2, deg.omega2_jacket);
        prop_assert!(deg.omega2 >= 0);
        // Each face lies in exactly two of the three jackets.
        let jacket_faces: usize = deg.jackets.iter().map(|j| j.face_count()).sum();
        prop_assert_eq!(jacket_faces, 2 * deg.faces.len());
        // Demigenera are nonnegative; ribbon edge counts match L.
        for j in &deg.jackets {
            for comp in &j.components {
                prop_assert!(comp.k >= 0);
            }
            prop_assert_eq!(j.components.iter().map(|c| c.e).sum::<usize>(), deg.line_count);
        }
        // Bubble weights by kind.
        for b in &deg.bubbles {
            let expected = match b.kind {
                on3_core::graph::BubbleKind::Pillow(_) => 1,
                _ => 0,
            };
            prop_assert_eq!(b.rho2, expected);
            // rho2 equals the sum of per-color disconnection deficits; for
            // a pillow the deficit sits at the distinguished color.
            prop_assert_eq!(b.delta.iter().sum::<usize>() as i64, b.rho2);
            if let on3_core::graph::BubbleKind::Pillow(l) = b.kind {
                prop_assert_eq!(b.delta[l as usize - 1], 1);
            }
        }
    }

    #[test]
    fn canonical_form_is_relabeling_invariant((g, perm) in graph_and_perm()) {
        let relabeled = g.relabel(&perm).unwrap();
        prop_assert_eq!(g.canonical_form(), relabeled.canonical_form());
        prop_assert_eq!(g.is_bipartite(), relabeled.is_bipartite());
        prop_assert_eq!(g.omega2().unwrap(), relabeled.omega2().unwrap());
    }

    #[test]
    fn color_orbit_form_is_color_invariant(g in graph_strategy(), k in 0usize..6) {
        const PERMS: [[usize; 3]; 6] = [
            [1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1],
        ];
        let permuted = g.permute_colors(PERMS[k]);
        prop_assert_eq!(
            g.canonical_form_color_orbit(),
            permuted.canonical_form_color_orbit()
        );
    }

    #[test]
    fn contraction_preserves_degree(g in graph_strategy()) {
        prop_assume!(g.is_connected());
        let omega2 = g.omega2().unwrap();
        for melon in find_melons(&g) {
            let contracted = contract_melon(&g, &melon).unwrap();
            if contracted.node_count() == 0 {
                // Bare propagator: the whole graph was one closed melon.
                continue;
            }
            prop_assert_eq!(contracted.omega2().unwrap(), omega2);
        }
    }
}

#[test]
fn tree_oracle_matches_closed_form() {
    for p in 0..=4u64 {
        for q in 0..=8u64 {
            if 4 * p + 2 * q > 16 {
                continue;
            }
            assert_eq!(enumerate_trees(p, q).unwrap(), c_pq(p, q), "p={p} q={q}");
        }
    }
}

#[test]
fn reduction_is_order_insensitive_on_census_classes() {
    for config in [
        CensusConfig::new(2, [0, 0, 0]),
        CensusConfig::new(1, [1, 0, 0]),
        CensusConfig::new(0, [1, 1, 1]),
        CensusConfig::new(3, [0, 0, 0]),
    ] {
        let report = enumerate_vacuum(&config).unwrap();
        for class in &report.classes {
            let fwd = reduce(&class.representative).unwrap();
            let rev = reduce_reversed(&class.representative).unwrap();
            assert_eq!(fwd.verdict, rev.verdict);
            assert_eq!(fwd.contractions.len(), rev.contractions.len());
            // Verdict agrees with the degree-based classification.
            match classify(&class.representative).unwrap() {
                OrderClass::Lo => assert!(fwd.verdict.is_melonic()),
                OrderClass::Nlo => {
                    assert!(matches!(fwd.verdict, Verdict::Infinity(_)))
                }
                OrderClass::Higher(_) => {
                    assert!(!fwd.verdict.is_melonic());
                    assert!(!matches!(fwd.verdict, Verdict::Infinity(_)));
                }
            }
        }
    }
}
