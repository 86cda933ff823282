//! Python bindings: the `Network` class and an `ensemble` function.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyIOError, PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hiernet::analytics::{self, Distance};
use hiernet::ensemble::{self as ens, EnsembleSpec};
use hiernet::format;
use hiernet::gen::{generate_network, GenMode, GenParams};
use hiernet::oracle;
use hiernet::{ClusterRef, Error, HierarchyShape, LinkTable, NetworkModel};

fn err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Overflow(_) => PyOverflowError::new_err(msg),
        Error::Io(_) => PyIOError::new_err(msg),
        Error::CopyFailed { .. } => PyRuntimeError::new_err(msg),
        _ => PyValueError::new_err(msg),
    }
}

fn mode(kind: &str, value: u64) -> PyResult<GenMode> {
    match kind {
        "nodes" => Ok(GenMode::ByNodes(value)),
        "levels" => Ok(GenMode::ByLevels(value as usize)),
        "regular" => Ok(GenMode::Regular(value as usize)),
        other => Err(PyValueError::new_err(format!(
            "unknown mode `{other}` (nodes, levels, regular)"
        ))),
    }
}

/// A block-hierarchical network stored as its node-link tree.
///
/// Nodes, levels and cluster indices are 1-based.
#[pyclass(frozen, module = "pyhiernet")]
struct Network(NetworkModel);

impl Network {
    fn generate(kind: &str, value: u64, p: u32, mu: f64, seed: u64) -> PyResult<Self> {
        let params = GenParams::new(mode(kind, value)?, p, mu, seed);
        generate_network(&params).map(Network).map_err(err)
    }
}

#[pymethods]
impl Network {
    /// Builds a network from per-level child counts and bitmap strings,
    /// level 1 first.
    #[new]
    fn new(p: u32, levels: Vec<Vec<u32>>, bitmaps: Vec<Vec<String>>) -> PyResult<Self> {
        let links = LinkTable::from_strings(&bitmaps).map_err(err)?;
        NetworkModel::new(HierarchyShape::new(p, levels), links)
            .map(Network)
            .map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (n, p, mu, seed = 0))]
    fn by_nodes(n: u64, p: u32, mu: f64, seed: u64) -> PyResult<Self> {
        Self::generate("nodes", n, p, mu, seed)
    }

    #[staticmethod]
    #[pyo3(signature = (levels, p, mu, seed = 0))]
    fn by_levels(levels: u64, p: u32, mu: f64, seed: u64) -> PyResult<Self> {
        Self::generate("levels", levels, p, mu, seed)
    }

    #[staticmethod]
    #[pyo3(signature = (levels, p, mu, seed = 0))]
    fn regular(levels: u64, p: u32, mu: f64, seed: u64) -> PyResult<Self> {
        Self::generate("regular", levels, p, mu, seed)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        format::deserialize(text).map(Network).map_err(err)
    }

    #[staticmethod]
    fn read(path: std::path::PathBuf) -> PyResult<Self> {
        format::read_file(path).map(Network).map_err(err)
    }

    fn to_text(&self) -> String {
        format::serialize(&self.0)
    }

    fn write(&self, path: std::path::PathBuf) -> PyResult<()> {
        format::write_file(&self.0, path).map_err(err)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.p()
    }

    #[getter]
    fn gamma(&self) -> usize {
        self.0.gamma()
    }

    #[getter]
    fn node_count(&self) -> u64 {
        self.0.node_count()
    }

    fn __len__(&self) -> usize {
        self.0.node_count() as usize
    }

    /// Child counts per level, level 1 first.
    #[getter]
    fn levels(&self) -> Vec<Vec<u32>> {
        self.0.shape().levels().to_vec()
    }

    /// Bitmap strings per level, level 1 first.
    #[getter]
    fn bitmaps(&self) -> Vec<Vec<String>> {
        self.0
            .links()
            .levels()
            .iter()
            .map(|l| (0..l.len()).map(|i| l.bitmap_string(i)).collect())
            .collect()
    }

    fn psi(&self, level: usize, index: usize, n: usize, s: usize) -> PyResult<bool> {
        self.0.psi(ClusterRef::new(level, index), n, s).map_err(err)
    }

    /// `[(cluster, child_pos)]` from level 1 up to the root.
    fn node_path(&self, x: u64) -> PyResult<Vec<(usize, usize)>> {
        let path = self.0.node_path(x).map_err(err)?;
        Ok(path
            .steps()
            .iter()
            .map(|s| (s.cluster, s.child_pos))
            .collect())
    }

    fn edges(&self) -> PyResult<u128> {
        analytics::edge_count(&self.0, self.0.root()).map_err(err)
    }

    fn triangles(&self) -> PyResult<u128> {
        analytics::triangle_count(&self.0, self.0.root()).map_err(err)
    }

    fn four_cycles(&self) -> PyResult<u128> {
        analytics::four_cycle_count(&self.0, self.0.root()).map_err(err)
    }

    fn wedges(&self) -> PyResult<u128> {
        analytics::wedge_count(&self.0, self.0.root()).map_err(err)
    }

    /// Counts inside one cluster as a dict.
    fn cluster<'py>(
        &self,
        py: Python<'py>,
        level: usize,
        index: usize,
    ) -> PyResult<Bound<'py, PyDict>> {
        let a =
            analytics::cluster_aggregates(&self.0, ClusterRef::new(level, index)).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("nodes", a.nodes)?;
        d.set_item("edges", a.edges)?;
        d.set_item("wedges", a.wedges)?;
        d.set_item("triangles", a.triangles)?;
        d.set_item("four_cycles", a.four_cycles)?;
        Ok(d)
    }

    fn degree(&self, x: u64) -> PyResult<u64> {
        analytics::node_degree(&self.0, x).map_err(err)
    }

    fn triangles_at(&self, x: u64) -> PyResult<u128> {
        analytics::triangles_at_node(&self.0, x).map_err(err)
    }

    fn clustering(&self, x: u64) -> PyResult<f64> {
        analytics::clustering_coefficient(&self.0, x).map_err(err)
    }

    fn degrees(&self) -> Vec<u64> {
        analytics::all_degrees(&self.0)
    }

    fn degree_distribution(&self) -> BTreeMap<u64, u64> {
        analytics::degree_distribution(&self.0)
    }

    #[pyo3(signature = (bins = ens::CLUSTERING_BINS))]
    fn clustering_distribution(&self, bins: u64) -> PyResult<BTreeMap<u64, u64>> {
        analytics::clustering_distribution(&self.0, bins).map_err(err)
    }

    /// Shortest-path length, or None when unreachable.
    fn distance(&self, x: u64, y: u64) -> PyResult<Option<u64>> {
        analytics::distance(&self.0, x, y)
            .map(Distance::finite)
            .map_err(err)
    }

    /// `(finite, unreachable)`: pair counts by distance, and the number
    /// of disconnected pairs.
    fn distance_distribution(&self) -> (BTreeMap<u64, u64>, u64) {
        let h = analytics::distance_distribution(&self.0);
        (h.finite, h.unreachable)
    }

    fn diameter(&self) -> u64 {
        analytics::diameter(&self.0)
    }

    fn components(&self) -> Vec<u64> {
        analytics::component_sizes(&self.0)
    }

    /// Explicit sorted edge list; refused above `cap` nodes.
    #[pyo3(signature = (cap = oracle::DEFAULT_EXPANSION_CAP))]
    fn edge_list(&self, cap: u64) -> PyResult<Vec<(u32, u32)>> {
        Ok(oracle::expand(&self.0, cap).map_err(err)?.edges().to_vec())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!(
            "Network(p={}, gamma={}, n={})",
            self.0.p(),
            self.0.gamma(),
            self.0.node_count()
        )
    }
}

/// Runs a seeded ensemble and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (mode_name, value, p, mu, seed = 0, copies = 100, props = "c3,c4", workers = None))]
#[allow(clippy::too_many_arguments)]
fn ensemble<'py>(
    py: Python<'py>,
    mode_name: &str,
    value: u64,
    p: u32,
    mu: f64,
    seed: u64,
    copies: u64,
    props: &str,
    workers: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = EnsembleSpec {
        params: GenParams::new(mode(mode_name, value)?, p, mu, seed),
        copies,
        properties: ens::parse_properties(props).map_err(err)?,
        workers,
    };
    let report = py.detach(|| ens::run_ensemble(&spec)).map_err(err)?;
    py.import("json")?
        .call_method1("loads", (ens::to_json(&report),))
}

#[pymodule]
fn pyhiernet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Network>()?;
    m.add_function(wrap_pyfunction!(ensemble, m)?)?;
    m.add("__version__", ens::VERSION)?;
    Ok(())
}
