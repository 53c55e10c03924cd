//! Invariants of reduction, depth, rafts and tree balls on random abelian
//! graphs of groups.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use common::{graph, ABELIAN_FIXTURES};
use raftkit_core::depth::{depth_filtration, depth_zero_rafts, DepthConfig, Verdict};
use raftkit_core::gog::{
    comm_classes, complete_reduce, graph_from_json, graph_to_json, reducible_edges, validate, Orbit,
    SelectionPolicy,
};
use raftkit_core::tree::{annotate_depth, build_ball, strict_chain_depths, Element};
use raftkit_core::GraphOfGroups;

fn injective(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<i64>> {
    loop {
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        if common::bareiss_rank(&m) == cols {
            return m;
        }
    }
}

/// A connected abelian graph with up to three vertices and four edges.
fn random_graph(seed: u64) -> GraphOfGroups {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = rng.gen_range(1..=3);
    let ranks: Vec<usize> = (0..nv).map(|_| rng.gen_range(1..=3)).collect();
    let mut edges = Vec::new();
    let extra = rng.gen_range(0..=2);
    for i in 0..(nv - 1 + extra).max(1) {
        // The first nv-1 edges form a spanning path.
        let (a, b) = if i + 1 < nv {
            (i, i + 1)
        } else {
            (rng.gen_range(0..nv), rng.gen_range(0..nv))
        };
        let rank = rng.gen_range(1..=ranks[a].min(ranks[b]));
        edges.push(json!({
            "id": format!("e{i}"),
            "rank": rank,
            "ends": [
                {"vertex": format!("v{a}"), "matrix": injective(&mut rng, ranks[a], rank)},
                {"vertex": format!("v{b}"), "matrix": injective(&mut rng, ranks[b], rank)},
            ],
        }));
    }
    let vertices: Vec<_> = ranks
        .iter()
        .enumerate()
        .map(|(i, r)| json!({"id": format!("v{i}"), "rank": r}))
        .collect();
    let doc = json!({"vertices": vertices, "edges": edges});
    graph_from_json(&doc.to_string()).unwrap()
}

fn orbit_set(g: &GraphOfGroups) -> BTreeSet<Orbit> {
    g.orbits().into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_graphs_are_valid(seed in any::<u64>()) {
        let g = random_graph(seed);
        prop_assert!(validate(&g).is_valid(), "{:?}", validate(&g));
        let again = graph_from_json(&graph_to_json(&g).to_string()).unwrap();
        prop_assert_eq!(again, g);
    }

    #[test]
    fn reduction_is_complete_and_order_free(seed in any::<u64>()) {
        let g = random_graph(seed);
        let a = complete_reduce(&g, &SelectionPolicy::Lexicographic).unwrap();
        let b = complete_reduce(&g, &SelectionPolicy::ReverseLexicographic).unwrap();
        for r in [&a, &b] {
            prop_assert!(reducible_edges(r).is_empty());
            prop_assert!(validate(r).is_valid());
            // Each collapse removes one vertex and one edge.
            prop_assert_eq!(
                g.vertices().len() - r.vertices().len(),
                g.edges().len() - r.edges().len()
            );
        }
        prop_assert_eq!(comm_classes(&a, 3), comm_classes(&b, 3));
    }

    #[test]
    fn depth_zero_rafts_partition_their_orbits(seed in any::<u64>()) {
        let g = complete_reduce(&random_graph(seed), &SelectionPolicy::default()).unwrap();
        let rafts = depth_zero_rafts(&g);
        let mut seen = BTreeSet::new();
        for r in &rafts {
            prop_assert!(r.kind.is_some());
            prop_assert!(!r.vertex_ids().is_empty());
            for o in r.orbits() {
                prop_assert!(seen.insert(o.clone()), "{} in two rafts", o);
            }
        }
    }

    #[test]
    fn finite_filtrations_are_consistent(seed in any::<u64>()) {
        let g = complete_reduce(&random_graph(seed), &SelectionPolicy::default()).unwrap();
        let da = depth_filtration(&g, &DepthConfig::default()).unwrap();
        let Verdict::Finite(max) = da.verdict else {
            return Ok(());
        };
        let all = orbit_set(&g);
        prop_assert_eq!(da.depth.keys().cloned().collect::<BTreeSet<_>>(), all.clone());
        prop_assert_eq!(da.depth.values().copied().max(), Some(max));
        prop_assert_eq!(da.levels.len(), max + 1);
        for level in &da.levels {
            let upto: BTreeSet<Orbit> = da.depth.iter().filter(|(_, &d)| d <= level.level).map(|(o, _)| o.clone()).collect();
            let flot: BTreeSet<Orbit> = level.flotillas.iter().flatten().cloned().collect();
            prop_assert_eq!(&flot, &upto);
            prop_assert_eq!(level.flotillas.iter().map(Vec::len).sum::<usize>(), upto.len());
            for raft in &level.rafts {
                for o in raft.orbits() {
                    prop_assert!(da.depth[o] <= level.level);
                }
            }
        }
        // Depth-zero rafts are exactly the components of depth-zero orbits.
        let zero: BTreeSet<Orbit> = da.depth_zero_rafts().iter().flat_map(|r| r.orbits().cloned()).collect();
        let want: BTreeSet<Orbit> = da.depth.iter().filter(|(_, &d)| d == 0).map(|(o, _)| o.clone()).collect();
        prop_assert_eq!(zero, want);
    }

    #[test]
    fn balls_are_trees(seed in any::<u64>(), radius in 0usize..=2, cap in 1usize..=2) {
        let g = random_graph(seed);
        let root = g.vertices()[0].id.clone();
        let ball = build_ball(&g, &root, radius, cap).unwrap();
        prop_assert_eq!(ball.edges.len() + 1, ball.nodes.len());
        for node in &ball.nodes {
            prop_assert!(node.distance <= radius);
            prop_assert_eq!(node.frontier, node.distance == radius);
            if !node.frontier {
                prop_assert_eq!(node.realized_valence, ball.neighbors(node.id).len());
                if let Some(v) = node.true_valence.finite() {
                    prop_assert_eq!(node.truncated, num_bigint::BigInt::from(node.realized_valence) < *v);
                }
            }
        }
    }
}

proptest! {
    // Exhaustive chains are costly; fewer cases.
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn ball_depths_match_chains(seed in any::<u64>()) {
        let g = complete_reduce(&random_graph(seed), &SelectionPolicy::default()).unwrap();
        let da = depth_filtration(&g, &DepthConfig::default()).unwrap();
        if !da.verdict.is_finite() {
            return Ok(());
        }
        let root = g.vertices()[0].id.clone();
        let ball = build_ball(&g, &root, 2, 2).unwrap();
        let labelled = annotate_depth(&ball, &da).unwrap();
        let brute = strict_chain_depths(&g, &ball).unwrap();
        for (el, d) in brute {
            if ball.half_distance(el) > 2 {
                continue;
            }
            let label = match el {
                Element::Node(i) => labelled.nodes[i].depth,
                Element::Edge(i) => labelled.edges[i].depth,
            };
            prop_assert_eq!(label, Some(d), "{:?}", el);
        }
    }
}

#[test]
fn shipped_graph_fixtures_validate() {
    for name in ABELIAN_FIXTURES
        .iter()
        .chain(&["heisenberg.json", "nonexample.json", "shear_loop.json"])
    {
        assert!(validate(&graph(name)).is_valid(), "{name}");
    }
    assert!(!validate(&graph("rank_deficient.json")).is_valid());
}
