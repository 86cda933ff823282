#![allow(dead_code)]

use hiernet::analytics::{self, Distance};
use hiernet::oracle::{self, ExpandedGraph};
use hiernet::{ClusterRef, NetworkModel};

/// Compares every tree-computed property with the brute-force oracle and
/// returns a description of each mismatch.
pub fn oracle_mismatches(model: &NetworkModel) -> Vec<String> {
    let mut out = Vec::new();
    let g = oracle::expand(model, oracle::DEFAULT_EXPANSION_CAP).expect("within cap");
    let n = model.node_count();
    let root = analytics::aggregates(model).unwrap().root();
    let mut check = |what: String, tree: u128, brute: u128| {
        if tree != brute {
            out.push(format!("{what}: tree {tree} vs oracle {brute}"));
        }
    };
    check("edges".into(), root.edges, g.edges().len() as u128);
    check("triangles".into(), root.triangles, oracle::bf_triangles(&g));
    check(
        "four-cycles".into(),
        root.four_cycles,
        oracle::bf_four_cycles(&g),
    );
    check("wedges".into(), root.wedges, oracle::bf_wedges(&g));
    check(
        "diameter".into(),
        analytics::diameter(model) as u128,
        oracle::bf_diameter(&g) as u128,
    );
    let degrees = analytics::all_degrees(model);
    for x in 1..=n {
        let profile = analytics::node_profile(model, x).unwrap();
        let brute = oracle::bf_degree(&g, x) as u128;
        check(
            format!("degree({x})"),
            analytics::node_degree(model, x).unwrap() as u128,
            brute,
        );
        check(
            format!("profile degree({x})"),
            profile.degree as u128,
            brute,
        );
        check(
            format!("top-down degree({x})"),
            degrees[x as usize - 1] as u128,
            brute,
        );
        check(
            format!("triangles_at({x})"),
            profile.triangles,
            oracle::bf_triangles_at(&g, x),
        );
    }
    let brute_hist = oracle::bf_distance_distribution(&g);
    let tree_hist = analytics::distance_distribution(model);
    if brute_hist != tree_hist {
        out.push(format!(
            "distance distribution: tree {tree_hist:?} vs oracle {brute_hist:?}"
        ));
    }
    for x in 1..=n {
        let from_x = oracle::bf_distances_from(&g, x);
        for y in x..=n {
            let brute = match from_x[y as usize - 1] {
                Some(d) => Distance::Finite(d),
                None => Distance::Unreachable,
            };
            let tree = analytics::distance(model, x, y).unwrap();
            if tree != brute {
                out.push(format!(
                    "distance({x},{y}): tree {tree:?} vs oracle {brute:?}"
                ));
            }
        }
    }
    let comps = analytics::component_sizes(model);
    let brute = oracle::bf_components(&g);
    if comps != brute {
        out.push(format!("components: tree {comps:?} vs oracle {brute:?}"));
    }
    out.extend(subcluster_mismatches(model, &g));
    out
}

/// Checks the cached aggregates of every internal cluster against the
/// oracle restricted to the cluster's nodes.
pub fn subcluster_mismatches(model: &NetworkModel, g: &ExpandedGraph) -> Vec<String> {
    let mut out = Vec::new();
    // Leaf span of each cluster, level by level, from cluster sizes.
    for level in 1..=model.gamma() {
        let width = model.shape().width(level) as usize;
        let mut start = 1u64;
        for i in 1..=width {
            let c = ClusterRef::new(level, i);
            let size = model.cluster_size(c).unwrap();
            let (lo, hi) = (start as u32, (start + size - 1) as u32);
            start += size;
            let edges = g
                .edges()
                .iter()
                .filter(|&&(u, v)| u >= lo && v <= hi)
                .map(|&(u, v)| (u - lo + 1, v - lo + 1));
            let sub = ExpandedGraph::from_edges(size as usize, edges);
            let agg = analytics::cluster_aggregates(model, c).unwrap();
            let brute = (
                sub.edges().len() as u128,
                oracle::bf_wedges(&sub),
                oracle::bf_triangles(&sub),
                oracle::bf_four_cycles(&sub),
            );
            if (agg.edges, agg.wedges, agg.triangles, agg.four_cycles) != brute {
                out.push(format!("cluster {c}: tree {agg:?} vs oracle {brute:?}"));
            }
        }
    }
    out
}

/// Exact identities between per-node and whole-network counts.
pub fn identity_mismatches(model: &NetworkModel) -> Vec<String> {
    let mut out = Vec::new();
    let root = analytics::aggregates(model).unwrap().root();
    let degrees = analytics::all_degrees(model);
    let degree_sum: u128 = degrees.iter().map(|&d| d as u128).sum();
    if degree_sum != 2 * root.edges {
        out.push(format!(
            "handshake: Σ degree {degree_sum} vs 2|E| {}",
            2 * root.edges
        ));
    }
    let wedges: u128 = degrees
        .iter()
        .map(|&d| d as u128 * (d as u128).saturating_sub(1) / 2)
        .sum();
    if wedges != root.wedges {
        out.push(format!(
            "wedges: Σ C(d,2) {wedges} vs recurrence {}",
            root.wedges
        ));
    }
    let tri: u128 = (1..=model.node_count())
        .map(|x| analytics::triangles_at_node(model, x).unwrap())
        .sum();
    if tri != 3 * root.triangles {
        out.push(format!(
            "triangle handshake: Σ t(x) {tri} vs 3·C3 {}",
            3 * root.triangles
        ));
    }
    out
}
