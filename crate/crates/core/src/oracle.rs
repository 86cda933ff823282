//! Reference implementations on the explicitly expanded graph.
//!
//! Nothing here reads the tree aggregates: the graph is materialized edge by
//! edge and every count uses a textbook method. Expansion is quadratic, so
//! it is refused above a node cap.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::analytics::{Distance, DistanceHistogram};
use crate::error::{Error, Result};
use crate::model::NetworkModel;

pub const DEFAULT_EXPANSION_CAP: u64 = 5000;

/// Undirected simple graph on nodes `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedGraph {
    n: usize,
    /// Sorted, `u < v`, 1-based.
    edges: Vec<(u32, u32)>,
    /// Sorted neighbour lists, 0-based.
    adj: Vec<Vec<u32>>,
}

impl ExpandedGraph {
    /// Builds a graph from arbitrary 1-based edges; duplicates are merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut list: Vec<(u32, u32)> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        list.sort_unstable();
        list.dedup();
        assert!(list
            .iter()
            .all(|&(u, v)| u != v && u >= 1 && v as usize <= n));
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u as usize - 1].push(v - 1);
            adj[v as usize - 1].push(u - 1);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        ExpandedGraph {
            n,
            edges: list,
            adj,
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// `u v` per line, sorted.
    pub fn edge_list(&self) -> String {
        let mut out = String::with_capacity(self.edges.len() * 8);
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Materializes every link: each set bit joins all nodes of the two
/// sub-clusters it names.
pub fn expand(model: &NetworkModel, cap: u64) -> Result<ExpandedGraph> {
    let n = model.node_count();
    if n > cap {
        return Err(Error::ExpansionCap { n, cap });
    }
    // Leaf span [start, end) of every cluster, level by level.
    let mut spans: Vec<(u32, u32)> = (0..n as u32).map(|x| (x, x + 1)).collect();
    let mut edges = Vec::new();
    for g in 1..=model.gamma() {
        let counts = model.shape().level(g);
        let links = model.links().level(g);
        let mut next = Vec::with_capacity(counts.len());
        let mut first = 0usize;
        for (i, &c) in counts.iter().enumerate() {
            let c = c as usize;
            let children = &spans[first..first + c];
            let mut bits = links.bits(i);
            for a in 0..c {
                for b in a + 1..c {
                    if bits.next() == Some(true) {
                        for u in children[a].0..children[a].1 {
                            for v in children[b].0..children[b].1 {
                                edges.push((u + 1, v + 1));
                            }
                        }
                    }
                }
            }
            next.push((children[0].0, children[c - 1].1));
            first += c;
        }
        spans = next;
    }
    Ok(ExpandedGraph::from_edges(n as usize, edges))
}

/// Degree of node `x` (1-based).
pub fn bf_degree(g: &ExpandedGraph, x: u64) -> u64 {
    g.adj[x as usize - 1].len() as u64
}

/// Breadth-first distances from `x` (1-based) to every node, 0-based index.
pub fn bf_distances_from(g: &ExpandedGraph, x: u64) -> Vec<Option<u64>> {
    let mut dist = vec![None; g.n];
    let src = x as usize - 1;
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in &g.adj[u] {
            let w = w as usize;
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn bf_distance(g: &ExpandedGraph, x: u64, y: u64) -> Distance {
    match bf_distances_from(g, x)[y as usize - 1] {
        Some(d) => Distance::Finite(d),
        None => Distance::Unreachable,
    }
}

pub fn bf_distance_distribution(g: &ExpandedGraph) -> DistanceHistogram {
    let mut hist = DistanceHistogram::default();
    for x in 1..=g.n {
        for d in &bf_distances_from(g, x as u64)[x..] {
            match d {
                Some(d) => *hist.finite.entry(*d).or_default() += 1,
                None => hist.unreachable += 1,
            }
        }
    }
    hist
}

pub fn bf_diameter(g: &ExpandedGraph) -> u64 {
    bf_distance_distribution(g)
        .finite
        .keys()
        .next_back()
        .copied()
        .unwrap_or(0)
}

fn common_neighbours(g: &ExpandedGraph, u: usize, v: usize) -> u64 {
    let (a, b) = (&g.adj[u], &g.adj[v]);
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Triangles: common neighbours summed over edges, each triangle seen 3 times.
pub fn bf_triangles(g: &ExpandedGraph) -> u128 {
    let total: u128 = g
        .edges
        .iter()
        .map(|&(u, v)| common_neighbours(g, u as usize - 1, v as usize - 1) as u128)
        .sum();
    total / 3
}

/// Triangles through `x`: edges among its neighbours.
pub fn bf_triangles_at(g: &ExpandedGraph, x: u64) -> u128 {
    let nb = &g.adj[x as usize - 1];
    let mut count = 0;
    for (i, &u) in nb.iter().enumerate() {
        for &v in &nb[i + 1..] {
            if g.has_edge(u as usize, v as usize) {
                count += 1;
            }
        }
    }
    count
}

/// Wedges as `Σ C(deg, 2)`.
pub fn bf_wedges(g: &ExpandedGraph) -> u128 {
    g.adj
        .iter()
        .map(|row| {
            let d = row.len() as u128;
            d * d.saturating_sub(1) / 2
        })
        .sum()
}

/// 4-cycles by wedge pairing: every pair of opposite corners `{u, w}` with
/// `c` common neighbours closes `C(c, 2)` cycles, and each cycle has two
/// such diagonals.
pub fn bf_four_cycles(g: &ExpandedGraph) -> u128 {
    let mut total = 0u128;
    for u in 0..g.n {
        for w in u + 1..g.n {
            let c = common_neighbours(g, u, w) as u128;
            total += c * c.saturating_sub(1) / 2;
        }
    }
    total / 2
}

/// 4-cycles by explicit enumeration of 4-node subsets and their three
/// cyclic orders. Only for small graphs.
pub fn bf_four_cycles_by_subsets(g: &ExpandedGraph) -> u128 {
    let n = g.n;
    let e = |a: usize, b: usize| g.has_edge(a, b);
    let mut total = 0u128;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let orders = [(a, b, c, d), (a, b, d, c), (a, c, b, d)];
                    total += orders
                        .iter()
                        .filter(|&&(w, x, y, z)| e(w, x) && e(x, y) && e(y, z) && e(z, w))
                        .count() as u128;
                }
            }
        }
    }
    total
}

/// Component sizes by repeated breadth-first search, largest first.
pub fn bf_components(g: &ExpandedGraph) -> Vec<u64> {
    let mut seen = vec![false; g.n];
    let mut sizes = Vec::new();
    for s in 0..g.n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        let mut size = 0;
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &w in &g.adj[u] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push_back(w as usize);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}
