//! Connected component sizes, bottom-up.
//!
//! Linked siblings are joined completely, so every group of sub-clusters
//! connected through the sibling graph collapses into one component holding
//! all their nodes, while an isolated sub-cluster keeps its own components.

use super::ChildGraph;
use crate::model::NetworkModel;

/// Disjoint sets over the sub-clusters of one vertex.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn reset(&mut self, n: usize) {
        self.parent.clear();
        self.parent.extend(0..n);
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Sizes of all connected components, largest first.
pub fn component_sizes(model: &NetworkModel) -> Vec<u64> {
    let n = model.node_count() as usize;
    // Components of every cluster on the current level, concatenated;
    // bounds[i]..bounds[i + 1] belongs to cluster i.
    let mut sizes = vec![1u64; n];
    let mut bounds: Vec<usize> = (0..=n).collect();
    let mut graph = ChildGraph::new();
    let mut dsu = Dsu { parent: Vec::new() };
    let mut group_size = Vec::new();
    for g in 1..=model.gamma() {
        let width = model.shape().level(g).len();
        let mut next_sizes = Vec::new();
        let mut next_bounds = Vec::with_capacity(width + 1);
        next_bounds.push(0);
        for i in 0..width {
            graph.load(model, g, i);
            let k = graph.k();
            let first = model.child_range(g, i).start;
            dsu.reset(k);
            for a in 0..k {
                for b in a + 1..k {
                    if graph.has(a, b) {
                        dsu.union(a, b);
                    }
                }
            }
            group_size.clear();
            group_size.resize(k, 0usize);
            for a in 0..k {
                let r = dsu.find(a);
                group_size[r] += 1;
            }
            for a in 0..k {
                let r = dsu.find(a);
                if group_size[r] == 1 {
                    let child = first + a;
                    next_sizes.extend_from_slice(&sizes[bounds[child]..bounds[child + 1]]);
                } else if r == a {
                    let total = (0..k)
                        .filter(|&c| dsu.find(c) == r)
                        .map(|c| model.size_of(g - 1, first + c))
                        .sum();
                    next_sizes.push(total);
                }
            }
            next_bounds.push(next_sizes.len());
        }
        sizes = next_sizes;
        bounds = next_bounds;
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}
