use thiserror::Error;

use crate::model::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid sub-cluster pair ({n}, {s}) for child count {k}")]
    InvalidPair { n: usize, s: usize, k: usize },

    #[error("no cluster {index} on level {level}")]
    InvalidCluster { level: usize, index: usize },

    #[error("node {node} out of range 1..={n}")]
    InvalidNode { node: u64, n: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("model violates {} structural invariant(s): {}", .0.len(), join(.0))]
    Invalid(Vec<Violation>),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("count overflow while computing {0}")]
    Overflow(&'static str),

    #[error("network has {n} nodes, above the expansion cap of {cap}")]
    ExpansionCap { n: u64, cap: u64 },

    #[error("copy {copy} (seed {seed}, stream {copy}) failed: {reason}")]
    CopyFailed {
        copy: u64,
        seed: u64,
        reason: String,
    },

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
