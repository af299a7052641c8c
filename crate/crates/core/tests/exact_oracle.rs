mod common;

use common::*;
use k22::exact::{
    bottom_stats, coefficients, count_directed_triangles, count_k22, count_k22_with,
    count_undirected_k22, count_undirected_triangles, work_bound, GraphCensus, K22Options,
    Orientation, StructureCounts,
};
use k22::graph::{DirectedGraph, NodeId};
use proptest::prelude::*;

fn oracle_counts(g: &DirectedGraph) -> StructureCounts {
    let d = Dense::of(g);
    let u = Dense::of_undirected(&g.undirected_projection());
    StructureCounts {
        k22: k22(&d),
        open_k22: open_k22(&d),
        transitive: transitive(&d),
        cyclic: cyclic(&d),
        open_directed: open_directed(&d),
        und_triangles: und_triangles(&u),
        connected_triplets: connected_triplets(&u),
        und_k22: und_4cycles(&u),
        open_und_k22: und_3paths(&u),
    }
}

#[test]
fn directed_counts_match_brute_force() {
    for seed in 0..50 {
        let g = random_digraph(20, 0.15, seed);
        let d = Dense::of(&g);
        let c = count_k22(&g, false);
        assert_eq!((c.k22, c.open_k22), (k22(&d), open_k22(&d)), "seed {seed}");
        let t = count_directed_triangles(&g);
        assert_eq!(
            (t.transitive, t.cyclic, t.open_directed),
            (transitive(&d), cyclic(&d), open_directed(&d)),
            "seed {seed}"
        );
    }
}

#[test]
fn undirected_counts_match_brute_force() {
    for seed in 0..50 {
        let ug = random_undirected(20, 0.2, 100 + seed);
        let d = Dense::of_undirected(&ug);
        let t = count_undirected_triangles(&ug);
        assert_eq!((t.triangles, t.connected_triplets), (und_triangles(&d), connected_triplets(&d)));
        let small = random_undirected(15, 0.3, 200 + seed);
        let d = Dense::of_undirected(&small);
        let q = count_undirected_k22(&small);
        assert_eq!((q.k22, q.open_k22), (und_4cycles(&d), und_3paths(&d)), "seed {seed}");
    }
}

#[test]
fn per_node_top_attribution_matches_brute_force() {
    let g = DirectedGraph::from_arc_list(&[(0, 2), (0, 3), (1, 2), (1, 3), (4, 2)]);
    let d = Dense::of(&g);
    let per = count_k22(&g, true).per_node.unwrap();
    assert_eq!(per.k22, k22_per_top(&d));
    assert_eq!(per.open_k22, open_k22_per_top(&d));
    // Node 2 owns the K22 and has forks from {0,1,4}: 3 pairs.
    assert_eq!(per.k22[2], 1);
    assert_eq!(per.open_k22[2], 4);
    assert_eq!(per.local_icc(2), Some(1.0));
    assert_eq!(per.local_icc(3), Some(0.0));

    for seed in 0..30 {
        let g = random_digraph(18, 0.2, 300 + seed);
        let d = Dense::of(&g);
        let per = count_k22(&g, true).per_node.unwrap();
        assert_eq!(per.k22, k22_per_top(&d));
        assert_eq!(per.open_k22, open_k22_per_top(&d));
    }
}

#[test]
fn bottom_attribution_is_top_attribution_of_the_reverse() {
    for seed in 0..20 {
        let g = random_digraph(16, 0.25, 400 + seed);
        let d = Dense::of(&g.transpose());
        let b = bottom_stats(&g);
        assert_eq!(b.k22, k22_per_top(&d));
        assert_eq!(b.open_k22, open_k22_per_top(&d));
    }
}

#[test]
fn work_counter_within_twice_the_bound() {
    for seed in 0..20 {
        let g = random_digraph(40, 0.1 + seed as f64 * 0.02, 500 + seed);
        for orientation in [Orientation::Forward, Orientation::Auto] {
            let c = count_k22_with(&g, K22Options { per_node: false, orientation });
            assert!(c.work as u128 <= 2 * work_bound(&g));
        }
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let g = random_reciprocal_digraph(200, 0.05, 0.3, 9);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| (GraphCensus::of(&g), count_k22(&g, true)));
    let b = four.install(|| (GraphCensus::of(&g), count_k22(&g, true)));
    assert_eq!(a, b);
}

#[test]
fn symmetric_digraph_has_nothing_left_after_mutual_removal() {
    for seed in 0..20 {
        let base = random_undirected(14, 0.35, 600 + seed);
        let arcs: Vec<_> = base.edges().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
        let g = DirectedGraph::from_arcs(14, arcs);
        let census = GraphCensus::of(&g);
        let r = census.report().unwrap();
        let w = r.without_mutual;
        assert!(!w.icc.is_defined() || w.icc.value() == Some(0.0));
        assert_eq!(w.tcc.0.map(|x| x.num), Some(0));
        assert_eq!(w.ccc.0.map(|x| x.num), Some(0));
        // Backtracking triples u→x→u remain: 2 per edge.
        assert_eq!(w.tcc.0.map(|x| x.den), Some(2 * base.edge_count() as u128));
        assert_eq!(r.full.ucc, r.full.mcc);
    }
}

#[test]
fn closed_k22_report() {
    let g = DirectedGraph::from_arc_list(&[(0, 2), (0, 3), (1, 2), (1, 3)]);
    let r = GraphCensus::of(&g).report().unwrap();
    assert_eq!(r.full.icc.to_string(), "1.000000000");
    assert_eq!(r.full.ucc.to_string(), "0.000000000");
    assert_eq!(r.full.tcc.to_string(), "none");
    assert_eq!(r.full.mcc.to_string(), "none");
}

#[test]
fn coefficient_helper_matches_census() {
    let g = random_reciprocal_digraph(25, 0.2, 0.4, 77);
    let census = GraphCensus::of(&g);
    assert_eq!(census.full, oracle_counts(&g));
    let r = coefficients(&census.full, &census.mutual).unwrap();
    let m = Dense::of_undirected(&g.mutual_graph());
    let expected = 3.0 * und_triangles(&m) as f64 / connected_triplets(&m) as f64;
    assert!((r.full.mcc.value().unwrap() - expected).abs() < 1e-12);
}

fn relabel(g: &DirectedGraph, perm: &[NodeId]) -> DirectedGraph {
    DirectedGraph::from_arcs(
        g.node_count(),
        g.arcs().map(|(u, v)| (perm[u as usize], perm[v as usize])),
    )
}

fn arcs_strategy() -> impl Strategy<Value = (usize, Vec<(NodeId, NodeId)>)> {
    (4usize..14).prop_flat_map(|n| {
        let arc = (0..n as NodeId, 0..n as NodeId);
        (Just(n), prop::collection::vec(arc, 0..60))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transpose_preserves_k22_totals((n, arcs) in arcs_strategy()) {
        let g = DirectedGraph::from_arcs(n, arcs);
        let a = count_k22(&g, false);
        let b = count_k22(&g.transpose(), false);
        prop_assert_eq!((a.k22, a.open_k22), (b.k22, b.open_k22));
    }

    #[test]
    fn relabelling_preserves_counts((n, arcs) in arcs_strategy(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let g = DirectedGraph::from_arcs(n, arcs);
        let mut perm: Vec<NodeId> = (0..n as NodeId).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = relabel(&g, &perm);
        prop_assert_eq!(GraphCensus::of(&g), GraphCensus::of(&h));
    }

    #[test]
    fn adding_an_arc_never_decreases_closed_counts(
        (n, arcs) in arcs_strategy(), extra in (0u32..14, 0u32..14)
    ) {
        let g = DirectedGraph::from_arcs(n, arcs);
        let (u, v) = (extra.0 % n as u32, extra.1 % n as u32);
        let h = g.with_arc(u, v);
        let (a, b) = (StructureCounts::of_directed(&g), StructureCounts::of_directed(&h));
        prop_assert!(b.k22 >= a.k22);
        prop_assert!(b.transitive >= a.transitive);
        prop_assert!(b.cyclic >= a.cyclic);
        prop_assert!(b.und_triangles >= a.und_triangles);
    }

    #[test]
    fn count_orderings_hold((n, arcs) in arcs_strategy()) {
        let g = DirectedGraph::from_arcs(n, arcs);
        let c = StructureCounts::of_directed(&g);
        prop_assert!(c.check().is_ok(), "{:?}", c.check());
    }
}
