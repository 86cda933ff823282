//! Shortest-path distances.
//!
//! Let `A` be the lowest cluster containing both `x` and `y`, with `x` in
//! sub-cluster `a` and `y` in sub-cluster `b`. Paths that stay in `A` can
//! only change sub-cluster along sibling links, and each such step reaches
//! every node of the next sub-cluster, so their length is the hop distance
//! from `a` to `b` in `A`'s sibling graph. A path that leaves `A` needs a
//! link of some ancestor chain cluster to a sibling; that sibling is then
//! adjacent to both nodes, giving length 2. The distance therefore depends
//! only on `(A, a, b)`.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::ChildGraph;
use crate::error::Result;
use crate::model::NetworkModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distance {
    Finite(u64),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<u64> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }
}

/// Pair distances over all unordered node pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceHistogram {
    pub finite: BTreeMap<u64, u64>,
    pub unreachable: u64,
}

impl DistanceHistogram {
    pub fn total(&self) -> u64 {
        self.finite.values().sum::<u64>() + self.unreachable
    }
}

/// Hop distances from `source` in the sibling graph; `u64::MAX` if unreached.
fn sibling_bfs(g: &ChildGraph, source: usize, dist: &mut Vec<u64>, queue: &mut VecDeque<usize>) {
    dist.clear();
    dist.resize(g.k(), u64::MAX);
    dist[source] = 0;
    queue.clear();
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for w in 0..g.k() {
            if g.has(u, w) && dist[w] == u64::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
}

fn resolve(local: u64, exit: bool) -> Distance {
    match (local, exit) {
        (1, _) => Distance::Finite(1),
        (u64::MAX, false) => Distance::Unreachable,
        (d, false) => Distance::Finite(d),
        (d, true) => Distance::Finite(d.min(2)),
    }
}

/// Exact distance between nodes `x` and `y` (1-based).
pub fn distance(model: &NetworkModel, x: u64, y: u64) -> Result<Distance> {
    let px = model.node_path(x)?;
    let py = model.node_path(y)?;
    if x == y {
        return Ok(Distance::Finite(0));
    }
    let lca = (1..=model.gamma())
        .find(|&g| px.at(g).cluster == py.at(g).cluster)
        .expect("distinct nodes share the root");
    let mut graph = ChildGraph::new();
    let mut exit = false;
    for g in lca + 1..=model.gamma() {
        let step = px.at(g);
        graph.load(model, g, step.cluster - 1);
        if graph.row_nonempty(step.child_pos - 1) {
            exit = true;
            break;
        }
    }
    let step = px.at(lca);
    graph.load(model, lca, step.cluster - 1);
    let (a, b) = (step.child_pos - 1, py.at(lca).child_pos - 1);
    let mut dist = Vec::new();
    sibling_bfs(&graph, a, &mut dist, &mut VecDeque::new());
    Ok(resolve(dist[b], exit))
}

/// Distances of all `N(N-1)/2` node pairs, grouped by lowest common cluster.
pub fn distance_distribution(model: &NetworkModel) -> DistanceHistogram {
    let mut hist = DistanceHistogram::default();
    let mut graph = ChildGraph::new();
    let mut dist = Vec::new();
    let mut queue = VecDeque::new();
    // exits[i]: some ancestor-chain cluster of cluster i on the current level
    // (itself excluded) is linked to a sibling.
    let mut exits = vec![false];
    for g in (1..=model.gamma()).rev() {
        let width = model.shape().level(g).len();
        let mut below = Vec::with_capacity(model.shape().width(g - 1) as usize);
        for (i, &exit) in exits.iter().enumerate().take(width) {
            graph.load(model, g, i);
            let first = model.child_range(g, i).start;
            for a in 0..graph.k() {
                below.push(exit || graph.row_nonempty(a));
                sibling_bfs(&graph, a, &mut dist, &mut queue);
                let va = model.size_of(g - 1, first + a);
                for (b, &local) in dist.iter().enumerate().skip(a + 1) {
                    let pairs = va * model.size_of(g - 1, first + b);
                    match resolve(local, exit) {
                        Distance::Finite(d) => *hist.finite.entry(d).or_default() += pairs,
                        Distance::Unreachable => hist.unreachable += pairs,
                    }
                }
            }
        }
        exits = below;
    }
    hist
}

/// Largest finite distance between two nodes; 0 when no pair is connected.
pub fn diameter(model: &NetworkModel) -> u64 {
    distance_distribution(model)
        .finite
        .keys()
        .next_back()
        .copied()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate_network, GenMode, GenParams};
    use crate::model::tests::sample_network;

    #[test]
    fn sample_distances() {
        let m = sample_network();
        assert_eq!(distance(&m, 1, 4).unwrap(), Distance::Finite(1));
        assert_eq!(distance(&m, 1, 2).unwrap(), Distance::Finite(2));
        assert_eq!(distance(&m, 1, 8).unwrap(), Distance::Unreachable);
        assert_eq!(distance(&m, 3, 3).unwrap(), Distance::Finite(0));
        assert_eq!(distance(&m, 8, 9).unwrap(), Distance::Finite(1));
        assert!(distance(&m, 0, 3).is_err());

        let hist = distance_distribution(&m);
        assert_eq!(hist.finite, BTreeMap::from([(1, 18), (2, 4)]));
        assert_eq!(hist.unreachable, 14);
        assert_eq!(hist.total(), 36);
        assert_eq!(diameter(&m), 2);
    }

    #[test]
    fn complete_and_trivial() {
        let m = generate_network(&GenParams::new(GenMode::Regular(3), 3, 0.0, 1)).unwrap();
        let hist = distance_distribution(&m);
        assert_eq!(hist.finite, BTreeMap::from([(1, 27 * 26 / 2)]));
        assert_eq!(diameter(&m), 1);

        let single = generate_network(&GenParams::new(GenMode::ByLevels(0), 3, 1.0, 1)).unwrap();
        assert_eq!(distance_distribution(&single), DistanceHistogram::default());
        assert_eq!(diameter(&single), 0);
        assert_eq!(distance(&single, 1, 1).unwrap(), Distance::Finite(0));
    }

    #[test]
    fn long_paths_inside_one_cluster() {
        // Root of five leaves linked as a path 1-2-3-4-5 and nothing above.
        use crate::model::{HierarchyShape, LinkTable};
        let shape = HierarchyShape::new(5, vec![vec![5]]);
        let links = LinkTable::from_strings(&[vec!["1000100101"]]).unwrap();
        let m = NetworkModel::new(shape, links).unwrap();
        assert_eq!(distance(&m, 1, 5).unwrap(), Distance::Finite(4));
        assert_eq!(diameter(&m), 4);
    }
}
