//! Random regular and irregular block-hierarchical networks.
//!
//! A network is stored as its node-link tree: the partition of nodes into
//! nested clusters ([`HierarchyShape`]) plus one link vector per internal
//! vertex saying which pairs of sub-clusters are joined ([`LinkTable`]).
//! Joined sub-clusters are connected completely, which lets every property
//! in [`analytics`] be computed by walking the tree instead of the graph.
//! [`oracle`] expands the graph explicitly for verification.

pub mod analytics;
pub mod ensemble;
mod error;
pub mod format;
pub mod gen;
pub mod model;
pub mod oracle;

pub use error::{Error, Result};
pub use model::{
    pair_index, ClusterRef, HierarchyShape, LevelLinks, LinkTable, NetworkModel, NodePath,
    PathStep, Violation,
};
