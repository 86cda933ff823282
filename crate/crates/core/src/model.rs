//! The node-link tree: partition structure, link vectors and navigation.
//!
//! Public indices follow the usual numbering of the model: levels run
//! `0..=Γ` with level 0 holding the network nodes, cluster indices and
//! child positions are 1-based, and nodes are `1..=N` in left-to-right
//! tree order. Internally everything is 0-based.

use std::fmt;
use std::ops::Range;
use std::sync::OnceLock;

use crate::analytics::Aggregates;
use crate::error::{Error, Result};

/// Offset of the unordered sub-cluster pair `(n, s)`, `n < s`, inside a
/// link vector of `k` sub-clusters. Pairs are laid out lexicographically:
/// `(1,2), (1,3), .., (1,k), (2,3), .., (k-1,k)`.
pub fn pair_index(n: usize, s: usize, k: usize) -> Result<usize> {
    if n == 0 || n >= s || s > k {
        return Err(Error::InvalidPair { n, s, k });
    }
    Ok(pair_offset(n - 1, s - 1, k))
}

/// 0-based variant of [`pair_index`]; requires `a < b < k`.
#[inline]
pub(crate) fn pair_offset(a: usize, b: usize, k: usize) -> usize {
    debug_assert!(a < b && b < k);
    a * (2 * k - a - 1) / 2 + (b - a - 1)
}

/// Number of bits in the link vector of a vertex with `k` sub-clusters.
#[inline]
pub fn bitmap_len(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// The partition of nodes into clusters: `Count(γ, i)` for every level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyShape {
    p: u32,
    /// `levels[γ - 1][i - 1] = Count(γ, i)`.
    levels: Vec<Vec<u32>>,
}

impl HierarchyShape {
    /// Wraps raw counts without checking them; see [`validate_parts`].
    pub fn new(p: u32, levels: Vec<Vec<u32>>) -> Self {
        HierarchyShape { p, levels }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Number of hierarchy levels Γ.
    pub fn gamma(&self) -> usize {
        self.levels.len()
    }

    /// All levels, level 1 first.
    pub fn levels(&self) -> &[Vec<u32>] {
        &self.levels
    }

    /// Child counts of the clusters on level `gamma` (1..=Γ).
    pub fn level(&self, gamma: usize) -> &[u32] {
        &self.levels[gamma - 1]
    }

    /// Number of clusters `n_γ` on a level; `n_0 = N`.
    pub fn width(&self, gamma: usize) -> u64 {
        if gamma == 0 {
            self.node_count()
        } else {
            self.levels[gamma - 1].len() as u64
        }
    }

    /// Number of network nodes N.
    pub fn node_count(&self) -> u64 {
        match self.levels.first() {
            None => 1,
            Some(level) => level.iter().map(|&c| c as u64).sum(),
        }
    }

    /// True when every cluster has exactly `p` sub-clusters.
    pub fn is_regular(&self) -> bool {
        self.levels.iter().flatten().all(|&c| c == self.p)
    }
}

/// Packed link vectors of every cluster on one level.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LevelLinks {
    /// Bit offset where each cluster's vector starts; one extra entry at the end.
    offsets: Vec<usize>,
    words: Vec<u64>,
}

impl LevelLinks {
    pub fn new() -> Self {
        LevelLinks {
            offsets: vec![0],
            words: Vec::new(),
        }
    }

    /// Appends the link vector of the next cluster on this level.
    pub fn push_bitmap<I: IntoIterator<Item = bool>>(&mut self, bits: I) {
        let mut end = *self.offsets.last().unwrap();
        for bit in bits {
            if end / 64 == self.words.len() {
                self.words.push(0);
            }
            if bit {
                self.words[end / 64] |= 1 << (end % 64);
            }
            end += 1;
        }
        self.offsets.push(end);
    }

    /// Number of clusters stored.
    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Length of the vector of cluster `i` (0-based).
    pub fn bitmap_len(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    /// Bit `offset` of cluster `i` (both 0-based).
    #[inline]
    pub fn bit(&self, i: usize, offset: usize) -> bool {
        let pos = self.offsets[i] + offset;
        self.words[pos / 64] >> (pos % 64) & 1 == 1
    }

    /// Bits of cluster `i` (0-based).
    pub fn bits(&self, i: usize) -> impl Iterator<Item = bool> + '_ {
        (0..self.bitmap_len(i)).map(move |off| self.bit(i, off))
    }

    /// The vector of cluster `i` as a `0`/`1` string.
    pub fn bitmap_string(&self, i: usize) -> String {
        self.bits(i).map(|b| if b { '1' } else { '0' }).collect()
    }

    /// Total number of set bits on the level.
    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }
}

/// The set of link vectors, one per internal vertex of the node-link tree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinkTable {
    /// `levels[γ - 1]` holds the vectors of the level-γ clusters.
    levels: Vec<LevelLinks>,
}

impl LinkTable {
    pub fn new(levels: Vec<LevelLinks>) -> Self {
        LinkTable { levels }
    }

    /// Builds a table from `0`/`1` strings, level 1 first. Characters other
    /// than `0` and `1` are rejected.
    pub fn from_strings<S: AsRef<str>>(levels: &[Vec<S>]) -> Result<Self> {
        let mut out = Vec::with_capacity(levels.len());
        for (g, level) in levels.iter().enumerate() {
            let mut links = LevelLinks::new();
            for (i, s) in level.iter().enumerate() {
                let s = s.as_ref();
                if let Some(bad) = s.chars().find(|c| *c != '0' && *c != '1') {
                    return Err(Error::InvalidParams(format!(
                        "bitmap {}.{} contains {bad:?}",
                        g + 1,
                        i + 1
                    )));
                }
                links.push_bitmap(s.chars().map(|c| c == '1'));
            }
            out.push(links);
        }
        Ok(LinkTable { levels: out })
    }

    pub fn gamma(&self) -> usize {
        self.levels.len()
    }

    /// Vectors of level `gamma` (1..=Γ).
    pub fn level(&self, gamma: usize) -> &LevelLinks {
        &self.levels[gamma - 1]
    }

    pub fn levels(&self) -> &[LevelLinks] {
        &self.levels
    }

    /// Total number of set bits.
    pub fn count_ones(&self) -> u64 {
        self.levels.iter().map(LevelLinks::count_ones).sum()
    }
}

/// A cluster `M_γ^(i)`; level 0 refers to the network nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClusterRef {
    pub level: usize,
    /// 1-based index within the level.
    pub index: usize,
}

impl ClusterRef {
    pub fn new(level: usize, index: usize) -> Self {
        ClusterRef { level, index }
    }
}

impl fmt::Display for ClusterRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.level, self.index)
    }
}

/// One step of a [`NodePath`]: the cluster containing the node on some
/// level and the position of the node's lower-level cluster inside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathStep {
    /// ν(x, γ), 1-based.
    pub cluster: usize,
    /// Position of `M_{γ-1}^(x)` among the sub-clusters, 1-based.
    pub child_pos: usize,
}

/// Chain of clusters containing a node, level 1 first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodePath {
    steps: Vec<PathStep>,
}

impl NodePath {
    pub fn steps(&self) -> &[PathStep] {
        &self.steps
    }

    /// Step for level `gamma` (1..=Γ).
    pub fn at(&self, gamma: usize) -> PathStep {
        self.steps[gamma - 1]
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// A broken structural invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BranchingIndex {
        p: u32,
    },
    RootWidth {
        found: usize,
    },
    Telescoping {
        level: usize,
        expected: u64,
        found: u64,
    },
    CountRange {
        level: usize,
        index: usize,
        count: u32,
        p: u32,
    },
    NodeBound {
        n: u64,
        p: u32,
        gamma: usize,
    },
    LevelCount {
        shape: usize,
        links: usize,
    },
    BitmapCount {
        level: usize,
        expected: usize,
        found: usize,
    },
    BitmapLength {
        level: usize,
        index: usize,
        expected: usize,
        found: usize,
    },
    AggregateMismatch {
        level: usize,
        index: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BranchingIndex { p } => write!(f, "branching index p = {p} < 2"),
            Violation::RootWidth { found } => {
                write!(f, "top level has {found} clusters, expected a single root")
            }
            Violation::Telescoping {
                level,
                expected,
                found,
            } => write!(
                f,
                "level telescoping: level {level} has {found} clusters but level {} counts sum to {expected}",
                level + 1
            ),
            Violation::CountRange {
                level,
                index,
                count,
                p,
            } => write!(f, "Count({level}, {index}) = {count} outside 1..={p}"),
            Violation::NodeBound { n, p, gamma } => write!(f, "N = {n} exceeds p^Γ = {p}^{gamma}"),
            Violation::LevelCount { shape, links } => {
                write!(f, "shape has {shape} levels but link table has {links}")
            }
            Violation::BitmapCount {
                level,
                expected,
                found,
            } => write!(
                f,
                "level {level} has {found} bitmaps, expected one per cluster ({expected})"
            ),
            Violation::BitmapLength {
                level,
                index,
                expected,
                found,
            } => write!(
                f,
                "bitmap length ≠ k(k−1)/2 at ({level}, {index}): expected {expected}, found {found}"
            ),
            Violation::AggregateMismatch { level, index } => {
                write!(f, "cached aggregates of ({level}, {index}) differ from recomputation")
            }
        }
    }
}

/// Checks every structural invariant of a shape and link table pair.
pub fn validate_parts(shape: &HierarchyShape, links: &LinkTable) -> Vec<Violation> {
    let mut out = Vec::new();
    let p = shape.p;
    if p < 2 {
        out.push(Violation::BranchingIndex { p });
    }
    let gamma = shape.gamma();
    if let Some(top) = shape.levels.last() {
        if top.len() != 1 {
            out.push(Violation::RootWidth { found: top.len() });
        }
    }
    for g in 2..=gamma {
        let expected: u64 = shape.level(g).iter().map(|&c| c as u64).sum();
        let found = shape.level(g - 1).len() as u64;
        if expected != found {
            out.push(Violation::Telescoping {
                level: g - 1,
                expected,
                found,
            });
        }
    }
    for (g, level) in shape.levels.iter().enumerate() {
        for (i, &count) in level.iter().enumerate() {
            if count < 1 || count > p {
                out.push(Violation::CountRange {
                    level: g + 1,
                    index: i + 1,
                    count,
                    p,
                });
            }
        }
    }
    let n = shape.node_count();
    let bound = (p as u64).checked_pow(gamma as u32);
    if p >= 2 && bound.is_some_and(|b| n > b) {
        out.push(Violation::NodeBound { n, p, gamma });
    }
    if links.gamma() != gamma {
        out.push(Violation::LevelCount {
            shape: gamma,
            links: links.gamma(),
        });
    }
    for g in 1..=gamma.min(links.gamma()) {
        let counts = shape.level(g);
        let level = links.level(g);
        if level.len() != counts.len() {
            out.push(Violation::BitmapCount {
                level: g,
                expected: counts.len(),
                found: level.len(),
            });
        }
        for (i, &count) in counts.iter().enumerate().take(level.len()) {
            let expected = bitmap_len(count as usize);
            let found = level.bitmap_len(i);
            if expected != found {
                out.push(Violation::BitmapLength {
                    level: g,
                    index: i + 1,
                    expected,
                    found,
                });
            }
        }
    }
    out
}

/// A block-hierarchical network: shape, links and cached cluster data.
///
/// Immutable once built. Cluster sizes and child ranges are computed
/// eagerly; counting aggregates are computed on first use and never change
/// afterwards.
#[derive(Debug, Clone)]
pub struct NetworkModel {
    shape: HierarchyShape,
    links: LinkTable,
    /// `first_child[γ - 1][i]` is the 0-based index on level γ-1 of the
    /// first sub-cluster of cluster `i`; one extra entry at the end.
    first_child: Vec<Vec<usize>>,
    /// `sizes[γ - 1][i] = |V(M_γ^(i+1))|`.
    sizes: Vec<Vec<u64>>,
    aggregates: OnceLock<Result<Aggregates>>,
}

impl PartialEq for NetworkModel {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.links == other.links
    }
}

impl Eq for NetworkModel {}

impl NetworkModel {
    /// Builds a model, rejecting any structural violation.
    pub fn new(shape: HierarchyShape, links: LinkTable) -> Result<Self> {
        let violations = validate_parts(&shape, &links);
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        let mut first_child = Vec::with_capacity(shape.gamma());
        let mut sizes: Vec<Vec<u64>> = Vec::with_capacity(shape.gamma());
        for g in 1..=shape.gamma() {
            let counts = shape.level(g);
            let mut starts = Vec::with_capacity(counts.len() + 1);
            let mut acc = 0usize;
            starts.push(0);
            for &c in counts {
                acc += c as usize;
                starts.push(acc);
            }
            let level_sizes = starts
                .windows(2)
                .map(|w| match sizes.last() {
                    None => (w[1] - w[0]) as u64,
                    Some(below) => below[w[0]..w[1]].iter().sum(),
                })
                .collect();
            first_child.push(starts);
            sizes.push(level_sizes);
        }
        Ok(NetworkModel {
            shape,
            links,
            first_child,
            sizes,
            aggregates: OnceLock::new(),
        })
    }

    /// A single-node network with no levels.
    pub fn single_node(p: u32) -> Result<Self> {
        NetworkModel::new(HierarchyShape::new(p, Vec::new()), LinkTable::default())
    }

    pub fn shape(&self) -> &HierarchyShape {
        &self.shape
    }

    pub fn links(&self) -> &LinkTable {
        &self.links
    }

    pub fn p(&self) -> u32 {
        self.shape.p
    }

    pub fn gamma(&self) -> usize {
        self.shape.gamma()
    }

    pub fn node_count(&self) -> u64 {
        self.shape.node_count()
    }

    pub fn root(&self) -> ClusterRef {
        ClusterRef::new(self.gamma(), 1)
    }

    fn check_cluster(&self, c: ClusterRef) -> Result<()> {
        let width = if c.level <= self.gamma() {
            self.shape.width(c.level)
        } else {
            0
        };
        if c.index == 0 || c.index as u64 > width {
            return Err(Error::InvalidCluster {
                level: c.level,
                index: c.index,
            });
        }
        Ok(())
    }

    pub(crate) fn check_node(&self, x: u64) -> Result<()> {
        let n = self.node_count();
        if x == 0 || x > n {
            return Err(Error::InvalidNode { node: x, n });
        }
        Ok(())
    }

    /// `Count(γ, i)`; zero for network nodes.
    pub fn count(&self, c: ClusterRef) -> Result<usize> {
        self.check_cluster(c)?;
        Ok(if c.level == 0 {
            0
        } else {
            self.shape.level(c.level)[c.index - 1] as usize
        })
    }

    /// Number of nodes `|V(M_γ^(i))|` in a cluster.
    pub fn cluster_size(&self, c: ClusterRef) -> Result<u64> {
        self.check_cluster(c)?;
        Ok(self.size_of(c.level, c.index - 1))
    }

    /// 1 iff sub-clusters `n` and `s` of `c` are directly connected.
    pub fn psi(&self, c: ClusterRef, n: usize, s: usize) -> Result<bool> {
        let k = self.count(c)?;
        if c.level == 0 || n == 0 || s == 0 || n > k || s > k {
            return Err(Error::InvalidPair { n, s, k });
        }
        if n == s {
            return Ok(false);
        }
        Ok(self.linked(c.level, c.index - 1, n - 1, s - 1))
    }

    /// Path of the clusters containing node `x` (1-based), level 1 first.
    pub fn node_path(&self, x: u64) -> Result<NodePath> {
        self.check_node(x)?;
        let mut idx = (x - 1) as usize;
        let mut steps = Vec::with_capacity(self.gamma());
        for starts in &self.first_child {
            let parent = starts.partition_point(|&s| s <= idx) - 1;
            steps.push(PathStep {
                cluster: parent + 1,
                child_pos: idx - starts[parent] + 1,
            });
            idx = parent;
        }
        Ok(NodePath { steps })
    }

    /// Re-checks every structural invariant, and the cached aggregates
    /// against a fresh recomputation when they have been computed.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out = validate_parts(&self.shape, &self.links);
        if let Some(Ok(cached)) = self.aggregates.get() {
            if let Ok(fresh) = crate::analytics::compute_aggregates(self) {
                for (g, (a, b)) in cached.levels.iter().zip(&fresh.levels).enumerate() {
                    for (i, (x, y)) in a.iter().zip(b).enumerate() {
                        if x != y {
                            out.push(Violation::AggregateMismatch {
                                level: g + 1,
                                index: i + 1,
                            });
                        }
                    }
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub(crate) fn aggregates_cell(&self) -> &OnceLock<Result<Aggregates>> {
        &self.aggregates
    }

    // 0-based internals

    /// Size of cluster `i` on `level`.
    #[inline]
    pub(crate) fn size_of(&self, level: usize, i: usize) -> u64 {
        if level == 0 {
            1
        } else {
            self.sizes[level - 1][i]
        }
    }

    /// 0-based indices on `level - 1` of the sub-clusters of cluster `i`.
    #[inline]
    pub(crate) fn child_range(&self, level: usize, i: usize) -> Range<usize> {
        let starts = &self.first_child[level - 1];
        starts[i]..starts[i + 1]
    }

    /// ψ on 0-based child positions `a != b`.
    #[inline]
    pub(crate) fn linked(&self, level: usize, i: usize, a: usize, b: usize) -> bool {
        let k = self.shape.levels[level - 1][i] as usize;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.links.levels[level - 1].bit(i, pair_offset(lo, hi, k))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The nine-node example: Branch = {{3,4,2},{3}},
    /// Bitmap = {{011, 100110, 1},{100}}.
    pub(crate) fn sample_network() -> NetworkModel {
        let shape = HierarchyShape::new(4, vec![vec![3, 4, 2], vec![3]]);
        let links = LinkTable::from_strings(&[vec!["011", "100110", "1"], vec!["100"]]).unwrap();
        NetworkModel::new(shape, links).unwrap()
    }

    #[test]
    fn pair_index_examples() {
        assert_eq!(pair_index(1, 2, 4).unwrap(), 0);
        assert_eq!(pair_index(2, 4, 4).unwrap(), 4);
        assert_eq!(pair_index(3, 4, 4).unwrap(), 5);
        assert!(matches!(
            pair_index(2, 2, 4),
            Err(Error::InvalidPair { .. })
        ));
        assert!(matches!(
            pair_index(3, 2, 4),
            Err(Error::InvalidPair { .. })
        ));
        assert!(matches!(
            pair_index(1, 5, 4),
            Err(Error::InvalidPair { .. })
        ));
    }

    #[test]
    fn pair_index_is_a_bijection() {
        for k in 2..12 {
            let mut seen = vec![false; bitmap_len(k)];
            for n in 1..=k {
                for s in n + 1..=k {
                    let off = pair_index(n, s, k).unwrap();
                    assert!(!seen[off]);
                    seen[off] = true;
                }
            }
            assert!(seen.into_iter().all(|b| b));
        }
    }

    #[test]
    fn psi_on_sample_network() {
        let m = sample_network();
        let c11 = ClusterRef::new(1, 1);
        assert!(!m.psi(c11, 1, 2).unwrap());
        assert!(m.psi(c11, 1, 3).unwrap());
        assert!(m.psi(c11, 2, 3).unwrap());
        assert!(m.psi(c11, 3, 2).unwrap());
        assert!(!m.psi(c11, 2, 2).unwrap());
        let root = m.root();
        assert!(m.psi(root, 1, 2).unwrap());
        assert!(!m.psi(root, 1, 3).unwrap());
        assert!(!m.psi(root, 2, 3).unwrap());
        assert!(matches!(m.psi(c11, 1, 4), Err(Error::InvalidPair { .. })));
        assert!(m.psi(ClusterRef::new(0, 1), 1, 1).is_err());
    }

    #[test]
    fn cluster_sizes() {
        let m = sample_network();
        assert_eq!(m.cluster_size(m.root()).unwrap(), 9);
        assert_eq!(m.cluster_size(ClusterRef::new(1, 2)).unwrap(), 4);
        assert_eq!(m.cluster_size(ClusterRef::new(0, 7)).unwrap(), 1);
        assert!(m.cluster_size(ClusterRef::new(1, 4)).is_err());
        assert!(m.cluster_size(ClusterRef::new(3, 1)).is_err());
        assert!(m.cluster_size(ClusterRef::new(0, 10)).is_err());
        for g in 0..=m.gamma() {
            let total: u64 = (1..=m.shape().width(g) as usize)
                .map(|i| m.cluster_size(ClusterRef::new(g, i)).unwrap())
                .sum();
            assert_eq!(total, 9);
        }
    }

    #[test]
    fn node_paths() {
        let m = sample_network();
        let path = m.node_path(1).unwrap();
        assert_eq!(
            path.steps(),
            &[
                PathStep {
                    cluster: 1,
                    child_pos: 1
                },
                PathStep {
                    cluster: 1,
                    child_pos: 1
                }
            ]
        );
        let path = m.node_path(9).unwrap();
        assert_eq!(
            path.steps(),
            &[
                PathStep {
                    cluster: 3,
                    child_pos: 2
                },
                PathStep {
                    cluster: 1,
                    child_pos: 3
                }
            ]
        );
        assert!(m.node_path(0).is_err());
        assert!(m.node_path(10).is_err());
        let single = NetworkModel::single_node(3).unwrap();
        assert!(single.node_path(1).unwrap().is_empty());
    }

    #[test]
    fn validation() {
        assert_eq!(sample_network().validate(), Ok(()));

        let shape = HierarchyShape::new(4, vec![vec![3, 4, 2], vec![3]]);
        let links = LinkTable::from_strings(&[vec!["011", "10011", "1"], vec!["100"]]).unwrap();
        let v = validate_parts(&shape, &links);
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().contains("bitmap length ≠ k(k−1)/2"));

        let shape = HierarchyShape::new(4, vec![vec![3, 4, 2], vec![2]]);
        let links = LinkTable::from_strings(&[vec!["011", "100110", "1"], vec!["1"]]).unwrap();
        let v = validate_parts(&shape, &links);
        assert!(v
            .iter()
            .any(|v| v.to_string().contains("level telescoping")));

        let shape = HierarchyShape::new(3, vec![vec![3, 4, 2], vec![3]]);
        let links = LinkTable::from_strings(&[vec!["011", "100110", "1"], vec!["100"]]).unwrap();
        let v = validate_parts(&shape, &links);
        assert!(matches!(v[0], Violation::CountRange { count: 4, .. }));
        assert!(NetworkModel::new(shape, links).is_err());
    }

    #[test]
    fn count_one_clusters_have_empty_bitmaps() {
        let shape = HierarchyShape::new(2, vec![vec![1, 2], vec![2]]);
        let links = LinkTable::from_strings(&[vec!["", "1"], vec!["0"]]).unwrap();
        let m = NetworkModel::new(shape, links).unwrap();
        assert_eq!(m.count(ClusterRef::new(1, 1)).unwrap(), 1);
        assert_eq!(m.links().level(1).bitmap_len(0), 0);
        assert!(!m.psi(ClusterRef::new(1, 1), 1, 1).unwrap());
    }
}
