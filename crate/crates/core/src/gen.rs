//! Seeded generation of partition structures and link vectors.
//!
//! All randomness comes from a [`DrawSource`]. The production source,
//! [`RngStream`], is ChaCha8 seeded through `seed_from_u64` with the word
//! stream selected by the copy index, so every `(seed, copy)` pair names an
//! independent, reproducible stream on any platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{bitmap_len, HierarchyShape, LevelLinks, LinkTable, NetworkModel};

/// Source of the two kinds of draws the generators make.
pub trait DrawSource {
    /// Uniform integer in `1..=p`.
    fn draw_count(&mut self, p: u32) -> u32;
    /// Uniform real in `[0, 1)`.
    fn draw_unit(&mut self) -> f64;
}

/// Deterministic portable stream.
#[derive(Debug, Clone)]
pub struct RngStream(ChaCha8Rng);

impl RngStream {
    /// Stream 0 of `seed`.
    pub fn new(seed: u64) -> Self {
        RngStream::for_copy(seed, 0)
    }

    /// Stream `copy` of `seed`; used for ensemble member `copy`.
    pub fn for_copy(seed: u64, copy: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(copy);
        RngStream(rng)
    }
}

impl DrawSource for RngStream {
    fn draw_count(&mut self, p: u32) -> u32 {
        self.0.random_range(1..=p)
    }

    fn draw_unit(&mut self) -> f64 {
        self.0.random::<f64>()
    }
}

/// How the partition structure is produced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode", content = "value")]
pub enum GenMode {
    /// Bottom-up from a node count.
    ByNodes(u64),
    /// Top-down for a number of levels.
    ByLevels(usize),
    /// Every cluster has exactly `p` sub-clusters.
    Regular(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    #[serde(flatten)]
    pub mode: GenMode,
    pub p: u32,
    pub mu: f64,
    pub seed: u64,
}

impl GenParams {
    pub fn new(mode: GenMode, p: u32, mu: f64, seed: u64) -> Self {
        GenParams { mode, p, mu, seed }
    }

    pub fn check(&self) -> Result<()> {
        check_p(self.p)?;
        if !(self.mu >= 0.0 && self.mu.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "mu must be a finite non-negative number, got {}",
                self.mu
            )));
        }
        if let GenMode::ByNodes(0) = self.mode {
            return Err(Error::InvalidParams("node count must be at least 1".into()));
        }
        Ok(())
    }
}

fn check_p(p: u32) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidParams(format!(
            "p must be at least 2, got {p}"
        )));
    }
    Ok(())
}

/// Bottom-up construction for a fixed node count: consecutive groups of
/// uniform size `1..=p` (the last one clipped to what remains) become the
/// clusters of the next level, until one cluster is left.
pub fn generate_shape_by_nodes<R: DrawSource>(
    n: u64,
    p: u32,
    rng: &mut R,
) -> Result<HierarchyShape> {
    check_p(p)?;
    if n < 1 {
        return Err(Error::InvalidParams("node count must be at least 1".into()));
    }
    let mut levels = Vec::new();
    let mut remaining_width = n;
    while remaining_width > 1 {
        let mut level = Vec::new();
        let mut left = remaining_width;
        while left != 0 {
            let l = (rng.draw_count(p) as u64).min(left);
            level.push(l as u32);
            left -= l;
        }
        remaining_width = level.len() as u64;
        levels.push(level);
    }
    Ok(HierarchyShape::new(p, levels))
}

/// Top-down construction for a fixed number of levels: starting from the
/// root, every cluster draws its number of sub-clusters uniformly in `1..=p`.
pub fn generate_shape_by_levels<R: DrawSource>(
    gamma: usize,
    p: u32,
    rng: &mut R,
) -> Result<HierarchyShape> {
    check_p(p)?;
    let mut levels = vec![Vec::new(); gamma];
    let mut width = 1u64;
    for g in (1..=gamma).rev() {
        let level: Vec<u32> = (0..width).map(|_| rng.draw_count(p)).collect();
        width = level.iter().map(|&c| c as u64).sum();
        levels[g - 1] = level;
    }
    Ok(HierarchyShape::new(p, levels))
}

/// The regular shape with `N = p^Γ`.
pub fn generate_shape_regular(gamma: usize, p: u32) -> Result<HierarchyShape> {
    check_p(p)?;
    let n = u32::try_from(gamma)
        .ok()
        .and_then(|g| (p as u64).checked_pow(g))
        .filter(|&n| usize::try_from(n).is_ok())
        .ok_or_else(|| Error::InvalidParams(format!("{p}^{gamma} nodes overflows")))?;
    let levels = (1..=gamma)
        .map(|g| vec![p; (n / (p as u64).pow(g as u32)) as usize])
        .collect();
    Ok(HierarchyShape::new(p, levels))
}

/// Link probability `k^(-μ)` of a cluster with `k` nodes.
pub fn link_probability(k: u64, mu: f64) -> f64 {
    (k as f64).powf(-mu)
}

/// Draws every link vector of `shape`: level 1 upward, clusters in index
/// order, bits in pair order. A bit is set when its uniform draw falls below
/// `k^(-μ)`, `k` being the cluster's node count, so for a fixed stream a
/// larger μ never sets more bits.
pub fn generate_links<R: DrawSource>(
    shape: &HierarchyShape,
    mu: f64,
    rng: &mut R,
) -> Result<LinkTable> {
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "mu must be non-negative, got {mu}"
        )));
    }
    let mut levels = Vec::with_capacity(shape.gamma());
    let mut below: Option<Vec<u64>> = None;
    for g in 1..=shape.gamma() {
        let counts = shape.level(g);
        let mut sizes = Vec::with_capacity(counts.len());
        let mut links = LevelLinks::new();
        let mut start = 0usize;
        for &c in counts {
            let c = c as usize;
            let k = match &below {
                None => c as u64,
                Some(b) => b[start..start + c].iter().sum(),
            };
            start += c;
            let omega = link_probability(k, mu);
            links.push_bitmap((0..bitmap_len(c)).map(|_| rng.draw_unit() < omega));
            sizes.push(k);
        }
        levels.push(links);
        below = Some(sizes);
    }
    Ok(LinkTable::new(levels))
}

/// Shape and links from one stream.
pub fn generate_with<R: DrawSource>(params: &GenParams, rng: &mut R) -> Result<NetworkModel> {
    params.check()?;
    let shape = match params.mode {
        GenMode::ByNodes(n) => generate_shape_by_nodes(n, params.p, rng)?,
        GenMode::ByLevels(g) => generate_shape_by_levels(g, params.p, rng)?,
        GenMode::Regular(g) => generate_shape_regular(g, params.p)?,
    };
    let links = generate_links(&shape, params.mu, rng)?;
    NetworkModel::new(shape, links)
}

/// Generates the network of `params` on stream 0 of its seed.
pub fn generate_network(params: &GenParams) -> Result<NetworkModel> {
    generate_with(params, &mut RngStream::new(params.seed))
}

/// Generates ensemble member `copy` of `params`.
pub fn generate_copy(params: &GenParams, copy: u64) -> Result<NetworkModel> {
    generate_with(params, &mut RngStream::for_copy(params.seed, copy))
}

/// `⌈log_{(p+1)/2} N⌉`, the expected number of levels of bottom-up generation.
pub fn expected_levels(n: u64, p: u32) -> f64 {
    ((n as f64).ln() / ((p as f64 + 1.0) / 2.0).ln()).ceil()
}
