//! Network properties computed on the node-link tree.
//!
//! Every cross link between two sibling clusters joins all nodes of one to
//! all nodes of the other, so counts inside a cluster follow from the
//! counts of its sub-clusters and the sibling link graph alone. One
//! bottom-up pass fills [`ClusterAggregates`] for every internal vertex;
//! per-node quantities climb the node's path to the root.

mod components;
mod distance;

pub use components::component_sizes;
pub use distance::{diameter, distance, distance_distribution, Distance, DistanceHistogram};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ClusterRef, NetworkModel};

/// Exact counts for one cluster's induced subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ClusterAggregates {
    pub nodes: u64,
    pub edges: u128,
    /// Unordered paths of two edges.
    pub wedges: u128,
    pub triangles: u128,
    pub four_cycles: u128,
}

impl ClusterAggregates {
    /// A single network node.
    pub const LEAF: ClusterAggregates = ClusterAggregates {
        nodes: 1,
        edges: 0,
        wedges: 0,
        triangles: 0,
        four_cycles: 0,
    };
}

/// Aggregates of every internal vertex, level by level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aggregates {
    /// `levels[γ - 1][i]` belongs to cluster `(γ, i + 1)`.
    pub(crate) levels: Vec<Vec<ClusterAggregates>>,
}

impl Aggregates {
    /// Aggregates of the level-`gamma` clusters (1..=Γ).
    pub fn level(&self, gamma: usize) -> &[ClusterAggregates] {
        &self.levels[gamma - 1]
    }

    /// Aggregates of the whole network.
    pub fn root(&self) -> ClusterAggregates {
        self.levels
            .last()
            .map_or(ClusterAggregates::LEAF, |top| top[0])
    }
}

/// Dense adjacency of the sibling link graph of one vertex.
pub(crate) struct ChildGraph {
    k: usize,
    adj: Vec<bool>,
}

impl ChildGraph {
    pub(crate) fn new() -> Self {
        ChildGraph {
            k: 0,
            adj: Vec::new(),
        }
    }

    /// Loads the links of cluster `i` (0-based) on `level`.
    pub(crate) fn load(&mut self, model: &NetworkModel, level: usize, i: usize) {
        let links = model.links().level(level);
        let k = model.shape().level(level)[i] as usize;
        self.k = k;
        self.adj.clear();
        self.adj.resize(k * k, false);
        let mut bits = links.bits(i);
        for a in 0..k {
            for b in a + 1..k {
                let bit = bits.next().unwrap_or(false);
                self.adj[a * k + b] = bit;
                self.adj[b * k + a] = bit;
            }
        }
    }

    #[inline]
    pub(crate) fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub(crate) fn has(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.k + b]
    }

    #[inline]
    fn bit(&self, a: usize, b: usize) -> u128 {
        self.has(a, b) as u128
    }

    pub(crate) fn row_nonempty(&self, a: usize) -> bool {
        (0..self.k).any(|b| self.has(a, b))
    }
}

#[inline]
fn choose2(x: u128) -> Option<u128> {
    if x.is_multiple_of(2) {
        (x / 2).checked_mul(x.saturating_sub(1))
    } else {
        x.checked_mul((x - 1) / 2)
    }
}

/// Combines the aggregates of the `k` sub-clusters of a vertex.
fn combine(children: &[ClusterAggregates], g: &ChildGraph) -> Option<ClusterAggregates> {
    let k = g.k();
    let v = |i: usize| children[i].nodes as u128;
    let e = |i: usize| children[i].edges;

    let mut nodes = 0u64;
    let mut edges = 0u128;
    let mut wedges = 0u128;
    let mut triangles = 0u128;
    let mut four = 0u128;
    for c in children {
        nodes = nodes.checked_add(c.nodes)?;
        edges = edges.checked_add(c.edges)?;
        wedges = wedges.checked_add(c.wedges)?;
        triangles = triangles.checked_add(c.triangles)?;
        four = four.checked_add(c.four_cycles)?;
    }

    for (i, child) in children.iter().enumerate() {
        let (vi, ei, wi) = (v(i), e(i), child.wedges);
        let pairs_i = choose2(vi)?;
        for j in 0..k {
            if j == i || !g.has(i, j) {
                continue;
            }
            let (vj, ej) = (v(j), e(j));
            // Edge inside i, apex in j.
            triangles = triangles.checked_add(ei.checked_mul(vj)?)?;
            // Centre in i: one arm inside i, the other to j; or both arms to j.
            wedges = wedges.checked_add(2u128.checked_mul(ei)?.checked_mul(vj)?)?;
            wedges = wedges.checked_add(vi.checked_mul(choose2(vj)?)?)?;
            // Wedge of i closed through a node of j.
            four = four.checked_add(wi.checked_mul(vj)?)?;
            if i < j {
                edges = edges.checked_add(vi.checked_mul(vj)?)?;
                let bipartite = pairs_i.checked_mul(choose2(vj)?)?;
                let internal = 2u128.checked_mul(ei)?.checked_mul(ej)?;
                four = four.checked_add(bipartite)?.checked_add(internal)?;
            }
            for l in j + 1..k {
                if l == i || !g.has(i, l) {
                    continue;
                }
                let vjl = vj.checked_mul(v(l))?;
                // Centre in i, arms to two different siblings.
                wedges = wedges.checked_add(vi.checked_mul(vjl)?)?;
                // Two nodes of i, one each of j and l.
                let through_i =
                    pairs_i.checked_add(2u128.checked_mul(ei)?.checked_mul(g.bit(j, l))?)?;
                four = four.checked_add(through_i.checked_mul(vjl)?)?;
                if i < j && g.has(j, l) {
                    triangles = triangles.checked_add(vi.checked_mul(vjl)?)?;
                }
            }
        }
    }

    // One node in each of four siblings: three distinct cyclic orders.
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                for m in l + 1..k {
                    let orders = g.bit(i, j) * g.bit(j, l) * g.bit(l, m) * g.bit(m, i)
                        + g.bit(i, j) * g.bit(j, m) * g.bit(m, l) * g.bit(l, i)
                        + g.bit(i, l) * g.bit(l, j) * g.bit(j, m) * g.bit(m, i);
                    if orders > 0 {
                        let prod = v(i)
                            .checked_mul(v(j))?
                            .checked_mul(v(l))?
                            .checked_mul(v(m))?;
                        four = four.checked_add(prod.checked_mul(orders)?)?;
                    }
                }
            }
        }
    }

    Some(ClusterAggregates {
        nodes,
        edges,
        wedges,
        triangles,
        four_cycles: four,
    })
}

/// Runs the bottom-up pass without touching the model's cache.
pub fn compute_aggregates(model: &NetworkModel) -> Result<Aggregates> {
    let mut levels: Vec<Vec<ClusterAggregates>> = Vec::with_capacity(model.gamma());
    let leaves = vec![ClusterAggregates::LEAF; model.p() as usize];
    let mut graph = ChildGraph::new();
    for g in 1..=model.gamma() {
        let width = model.shape().level(g).len();
        let mut level = Vec::with_capacity(width);
        for i in 0..width {
            let range = model.child_range(g, i);
            let children = match levels.last() {
                None => &leaves[..range.len()],
                Some(below) => &below[range],
            };
            graph.load(model, g, i);
            let agg = combine(children, &graph).ok_or(Error::Overflow("cluster aggregates"))?;
            level.push(agg);
        }
        levels.push(level);
    }
    Ok(Aggregates { levels })
}

/// The model's aggregates, computed once and cached.
pub fn aggregates(model: &NetworkModel) -> Result<&Aggregates> {
    model
        .aggregates_cell()
        .get_or_init(|| compute_aggregates(model))
        .as_ref()
        .map_err(Clone::clone)
}

/// Aggregates of any cluster, network nodes included.
pub fn cluster_aggregates(model: &NetworkModel, c: ClusterRef) -> Result<ClusterAggregates> {
    model.cluster_size(c)?;
    if c.level == 0 {
        return Ok(ClusterAggregates::LEAF);
    }
    Ok(aggregates(model)?.level(c.level)[c.index - 1])
}

/// `|E(M_γ^(i))|`.
pub fn edge_count(model: &NetworkModel, c: ClusterRef) -> Result<u128> {
    Ok(cluster_aggregates(model, c)?.edges)
}

/// Number of unordered two-edge paths inside a cluster.
pub fn wedge_count(model: &NetworkModel, c: ClusterRef) -> Result<u128> {
    Ok(cluster_aggregates(model, c)?.wedges)
}

/// Number of 3-cycles inside a cluster.
pub fn triangle_count(model: &NetworkModel, c: ClusterRef) -> Result<u128> {
    Ok(cluster_aggregates(model, c)?.triangles)
}

/// Number of 4-cycles (as edge sets) inside a cluster.
pub fn four_cycle_count(model: &NetworkModel, c: ClusterRef) -> Result<u128> {
    Ok(cluster_aggregates(model, c)?.four_cycles)
}

/// Degree and 3-cycles through one node, from a single climb.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeProfile {
    pub degree: u64,
    pub triangles: u128,
}

impl NodeProfile {
    /// `2t / (d(d-1))`, zero below degree 2.
    pub fn clustering(&self) -> f64 {
        if self.degree < 2 {
            return 0.0;
        }
        let d = self.degree as f64;
        2.0 * self.triangles as f64 / (d * (d - 1.0))
    }
}

/// Sum over siblings `j` linked to position `c` of `|V(S_j)|`.
fn linked_size(model: &NetworkModel, g: &ChildGraph, level: usize, first: usize, c: usize) -> u64 {
    (0..g.k())
        .filter(|&j| g.has(c, j))
        .map(|j| model.size_of(level - 1, first + j))
        .sum()
}

pub fn node_profile(model: &NetworkModel, x: u64) -> Result<NodeProfile> {
    let path = model.node_path(x)?;
    let aggs = if model.gamma() > 1 {
        Some(aggregates(model)?)
    } else {
        None
    };
    let mut graph = ChildGraph::new();
    let mut degree = 0u64;
    let mut triangles = 0u128;
    for (g, step) in (1..).zip(path.steps()) {
        let i = step.cluster - 1;
        let c = step.child_pos - 1;
        let first = model.child_range(g, i).start;
        graph.load(model, g, i);
        let size = |j: usize| model.size_of(g - 1, first + j) as u128;
        let edges = |j: usize| match aggs {
            Some(a) if g > 1 => a.level(g - 1)[first + j].edges,
            _ => 0,
        };
        let mut closing = 0u128;
        for j in 0..graph.k() {
            if !graph.has(c, j) {
                continue;
            }
            closing += edges(j);
            for l in j + 1..graph.k() {
                if graph.has(c, l) && graph.has(j, l) {
                    closing += size(j) * size(l);
                }
            }
        }
        let outward = linked_size(model, &graph, g, first, c);
        triangles = (degree as u128)
            .checked_mul(outward as u128)
            .and_then(|t| t.checked_add(closing))
            .and_then(|t| t.checked_add(triangles))
            .ok_or(Error::Overflow("triangles at node"))?;
        degree += outward;
    }
    Ok(NodeProfile { degree, triangles })
}

/// Degree of node `x` in the whole network.
pub fn node_degree(model: &NetworkModel, x: u64) -> Result<u64> {
    let path = model.node_path(x)?;
    let mut graph = ChildGraph::new();
    let mut degree = 0;
    for (g, step) in (1..).zip(path.steps()) {
        let i = step.cluster - 1;
        graph.load(model, g, i);
        let first = model.child_range(g, i).start;
        degree += linked_size(model, &graph, g, first, step.child_pos - 1);
    }
    Ok(degree)
}

/// Number of 3-cycles through node `x`.
pub fn triangles_at_node(model: &NetworkModel, x: u64) -> Result<u128> {
    Ok(node_profile(model, x)?.triangles)
}

/// Local clustering coefficient of node `x`.
pub fn clustering_coefficient(model: &NetworkModel, x: u64) -> Result<f64> {
    Ok(node_profile(model, x)?.clustering())
}

/// Degrees of all nodes in one top-down pass, node 1 first.
pub fn all_degrees(model: &NetworkModel) -> Vec<u64> {
    let mut offsets = vec![0u64];
    let mut graph = ChildGraph::new();
    for g in (1..=model.gamma()).rev() {
        let width = model.shape().level(g).len();
        let mut below = Vec::with_capacity(model.shape().width(g - 1) as usize);
        for (i, &offset) in offsets.iter().enumerate().take(width) {
            graph.load(model, g, i);
            let first = model.child_range(g, i).start;
            for c in 0..graph.k() {
                below.push(offset + linked_size(model, &graph, g, first, c));
            }
        }
        offsets = below;
    }
    offsets
}

/// Ordered `(value, count)` pairs.
pub type Histogram = BTreeMap<u64, u64>;

/// Degree distribution over all N nodes.
pub fn degree_distribution(model: &NetworkModel) -> Histogram {
    let mut hist = Histogram::new();
    for d in all_degrees(model) {
        *hist.entry(d).or_default() += 1;
    }
    hist
}

/// Clustering coefficients of all nodes binned into `bins` equal-width
/// buckets over `[0, 1]`; a coefficient of exactly 1 goes to the last bucket.
pub fn clustering_distribution(model: &NetworkModel, bins: u64) -> Result<Histogram> {
    if bins == 0 {
        return Err(Error::InvalidParams(
            "clustering histogram needs at least one bin".into(),
        ));
    }
    let mut hist = Histogram::new();
    for x in 1..=model.node_count() {
        let c = node_profile(model, x)?.clustering();
        let bin = ((c * bins as f64) as u64).min(bins - 1);
        *hist.entry(bin).or_default() += 1;
    }
    Ok(hist)
}
