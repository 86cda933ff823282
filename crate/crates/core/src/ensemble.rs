//! Seeded ensembles of independently generated networks.
//!
//! Copy `c` is generated from stream `c` of the ensemble seed (see
//! [`crate::gen::RngStream::for_copy`]), so per-copy results do not depend
//! on scheduling, and summaries are reduced in copy order.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytics;
use crate::error::{Error, Result};
use crate::gen::{generate_copy, GenParams};
use crate::model::NetworkModel;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Buckets used for clustering-coefficient histograms.
pub const CLUSTERING_BINS: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Edges,
    C3,
    C4,
    DegreeDist,
    DistanceDist,
    Components,
    Diameter,
    ClusteringDist,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Edges,
        Property::C3,
        Property::C4,
        Property::DegreeDist,
        Property::DistanceDist,
        Property::Components,
        Property::Diameter,
        Property::ClusteringDist,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Edges => "edges",
            Property::C3 => "c3",
            Property::C4 => "c4",
            Property::DegreeDist => "degree-dist",
            Property::DistanceDist => "distance-dist",
            Property::Components => "components",
            Property::Diameter => "diameter",
            Property::ClusteringDist => "clustering-dist",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

/// Parses a comma separated property list, keeping first occurrences.
pub fn parse_properties(list: &str) -> Result<Vec<Property>> {
    let mut out: Vec<Property> = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let p = name.parse()?;
        if !out.contains(&p) {
            out.push(p);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidParams("empty property list".into()));
    }
    Ok(out)
}

/// Histogram key: a value, or the unreachable bucket of pair distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Bin {
    Value(u64),
    Unreachable,
}

impl From<Bin> for String {
    fn from(b: Bin) -> String {
        b.to_string()
    }
}

impl TryFrom<String> for Bin {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

impl fmt::Display for Bin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bin::Value(v) => write!(f, "{v}"),
            Bin::Unreachable => f.write_str("unreachable"),
        }
    }
}

impl FromStr for Bin {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "unreachable" {
            return Ok(Bin::Unreachable);
        }
        s.parse()
            .map(Bin::Value)
            .map_err(|_| format!("bad histogram key {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PropertyValue {
    Scalar(u128),
    Histogram(BTreeMap<Bin, u64>),
}

/// Evaluates one property on a network.
pub fn evaluate(model: &NetworkModel, property: Property) -> Result<PropertyValue> {
    let root = || analytics::aggregates(model).map(|a| a.root());
    let values = |h: analytics::Histogram| h.into_iter().map(|(k, v)| (Bin::Value(k), v)).collect();
    Ok(match property {
        Property::Edges => PropertyValue::Scalar(root()?.edges),
        Property::C3 => PropertyValue::Scalar(root()?.triangles),
        Property::C4 => PropertyValue::Scalar(root()?.four_cycles),
        Property::Diameter => PropertyValue::Scalar(analytics::diameter(model) as u128),
        Property::DegreeDist => {
            PropertyValue::Histogram(values(analytics::degree_distribution(model)))
        }
        Property::ClusteringDist => PropertyValue::Histogram(values(
            analytics::clustering_distribution(model, CLUSTERING_BINS)?,
        )),
        Property::Components => {
            let mut hist = BTreeMap::new();
            for size in analytics::component_sizes(model) {
                *hist.entry(Bin::Value(size)).or_default() += 1;
            }
            PropertyValue::Histogram(hist)
        }
        Property::DistanceDist => {
            let d = analytics::distance_distribution(model);
            let mut hist: BTreeMap<Bin, u64> = values(d.finite);
            if d.unreachable > 0 {
                hist.insert(Bin::Unreachable, d.unreachable);
            }
            PropertyValue::Histogram(hist)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub params: GenParams,
    pub copies: u64,
    pub properties: Vec<Property>,
    /// Worker threads; `None` uses the global pool.
    #[serde(skip)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CopyResult {
    pub copy: u64,
    pub nodes: u64,
    pub levels: usize,
    pub values: BTreeMap<Property, PropertyValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarSummary {
    pub mean: f64,
    /// Sample standard deviation; 0 for a single copy.
    pub std: f64,
    pub min: u128,
    pub max: u128,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub scalars: BTreeMap<Property, ScalarSummary>,
    /// Mean count per histogram value over all copies.
    pub histograms: BTreeMap<Property, BTreeMap<Bin, f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleReport {
    pub version: String,
    pub params: GenParams,
    pub seed: u64,
    pub copies: u64,
    pub properties: Vec<Property>,
    pub results: Vec<CopyResult>,
    pub summary: Summary,
}

impl EnsembleReport {
    /// Per-copy values of a scalar property, in copy order.
    pub fn scalar_values(&self, property: Property) -> Vec<u128> {
        self.results
            .iter()
            .filter_map(|r| match r.values.get(&property) {
                Some(PropertyValue::Scalar(v)) => Some(*v),
                _ => None,
            })
            .collect()
    }
}

fn run_copy(spec: &EnsembleSpec, copy: u64) -> Result<CopyResult> {
    let fail = |e: Error| Error::CopyFailed {
        copy,
        seed: spec.params.seed,
        reason: e.to_string(),
    };
    let model = generate_copy(&spec.params, copy).map_err(fail)?;
    let mut values = BTreeMap::new();
    for &p in &spec.properties {
        values.insert(p, evaluate(&model, p).map_err(fail)?);
    }
    Ok(CopyResult {
        copy,
        nodes: model.node_count(),
        levels: model.gamma(),
        values,
    })
}

fn summarize(properties: &[Property], results: &[CopyResult]) -> Summary {
    let mut summary = Summary::default();
    let copies = results.len() as f64;
    for &p in properties {
        let mut scalars = Vec::new();
        let mut hist: BTreeMap<Bin, u128> = BTreeMap::new();
        for r in results {
            match r.values.get(&p) {
                Some(PropertyValue::Scalar(v)) => scalars.push(*v),
                Some(PropertyValue::Histogram(h)) => {
                    for (k, v) in h {
                        *hist.entry(*k).or_default() += *v as u128;
                    }
                }
                None => {}
            }
        }
        if !scalars.is_empty() {
            let sum: u128 = scalars.iter().sum();
            let mean = sum as f64 / copies;
            let var = if scalars.len() > 1 {
                scalars
                    .iter()
                    .map(|&v| (v as f64 - mean).powi(2))
                    .sum::<f64>()
                    / (copies - 1.0)
            } else {
                0.0
            };
            summary.scalars.insert(
                p,
                ScalarSummary {
                    mean,
                    std: var.sqrt(),
                    min: *scalars.iter().min().unwrap(),
                    max: *scalars.iter().max().unwrap(),
                },
            );
        } else if !results.is_empty() {
            summary.histograms.insert(
                p,
                hist.into_iter()
                    .map(|(k, v)| (k, v as f64 / copies))
                    .collect(),
            );
        }
    }
    summary
}

/// Generates and analyzes every copy, failing on the first broken copy in
/// copy order.
pub fn run_ensemble(spec: &EnsembleSpec) -> Result<EnsembleReport> {
    spec.params.check()?;
    if spec.copies < 1 {
        return Err(Error::InvalidParams("copies must be at least 1".into()));
    }
    let work = || -> Vec<Result<CopyResult>> {
        (0..spec.copies)
            .into_par_iter()
            .map(|c| run_copy(spec, c))
            .collect()
    };
    let outcomes = match spec.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    let results = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(EnsembleReport {
        version: VERSION.to_string(),
        params: spec.params,
        seed: spec.params.seed,
        copies: spec.copies,
        properties: spec.properties.clone(),
        summary: summarize(&spec.properties, &results),
        results,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidParams(format!("unknown format `{other}`"))),
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// `<name>[<bin>]` for histogram entries, `<name>` for scalars.
pub fn value_rows(values: &BTreeMap<Property, PropertyValue>) -> Vec<(String, String)> {
    let mut rows = Vec::new();
    for (p, v) in values {
        match v {
            PropertyValue::Scalar(x) => rows.push((p.to_string(), x.to_string())),
            PropertyValue::Histogram(h) => {
                for (k, count) in h {
                    rows.push((format!("{p}[{k}]"), count.to_string()));
                }
            }
        }
    }
    rows
}

/// Per-copy rows `copy,property,value`, including each copy's `nodes` and
/// `levels`.
pub fn write_csv<W: Write>(report: &EnsembleReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["copy", "property", "value"])
        .map_err(csv_err)?;
    for r in &report.results {
        let copy = r.copy.to_string();
        w.write_record([copy.as_str(), "nodes", &r.nodes.to_string()])
            .map_err(csv_err)?;
        w.write_record([copy.as_str(), "levels", &r.levels.to_string()])
            .map_err(csv_err)?;
        for (prop, value) in value_rows(&r.values) {
            w.write_record([copy.as_str(), &prop, &value])
                .map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Summary rows; the `copy` column holds the statistic (`mean`, `std`,
/// `min`, `max`).
pub fn write_summary_csv<W: Write>(report: &EnsembleReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["copy", "property", "value"])
        .map_err(csv_err)?;
    for (p, s) in &report.summary.scalars {
        let name = p.to_string();
        w.write_record(["mean", &name, &s.mean.to_string()])
            .map_err(csv_err)?;
        w.write_record(["std", &name, &s.std.to_string()])
            .map_err(csv_err)?;
        w.write_record(["min", &name, &s.min.to_string()])
            .map_err(csv_err)?;
        w.write_record(["max", &name, &s.max.to_string()])
            .map_err(csv_err)?;
    }
    for (p, h) in &report.summary.histograms {
        for (k, v) in h {
            w.write_record(["mean", &format!("{p}[{k}]"), &v.to_string()])
                .map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads per-copy CSV rows back as `(copy, property, value)`.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<(u64, String, u128)>> {
    let mut r = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let bad = |what: &str| Error::Parse {
            line,
            msg: format!("bad {what}"),
        };
        let copy = record
            .get(0)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("copy"))?;
        let prop = record.get(1).ok_or_else(|| bad("property"))?.to_string();
        let value = record
            .get(2)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("value"))?;
        rows.push((copy, prop, value));
    }
    Ok(rows)
}

pub fn to_json(report: &EnsembleReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<EnsembleReport> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })
}

/// Path of the CSV summary written next to `path`.
pub fn summary_path(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map_or_else(Default::default, |s| s.to_string_lossy().into_owned());
    path.with_file_name(format!("{stem}.summary.csv"))
}

/// Writes the report; CSV output also writes a `.summary.csv` sibling.
/// Returns the files written.
pub fn write_report(
    report: &EnsembleReport,
    path: &Path,
    format: OutputFormat,
) -> Result<Vec<PathBuf>> {
    match format {
        OutputFormat::Json => {
            std::fs::write(path, to_json(report))?;
            Ok(vec![path.to_path_buf()])
        }
        OutputFormat::Csv => {
            write_csv(report, std::fs::File::create(path)?)?;
            let summary = summary_path(path);
            write_summary_csv(report, std::fs::File::create(&summary)?)?;
            Ok(vec![path.to_path_buf(), summary])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::GenMode;

    fn spec(copies: u64, workers: Option<usize>) -> EnsembleSpec {
        EnsembleSpec {
            params: GenParams::new(GenMode::ByNodes(60), 3, 0.3, 11),
            copies,
            properties: Property::ALL.to_vec(),
            workers,
        }
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert_eq!(
            parse_properties("edges, c3,c3,degree-dist").unwrap(),
            vec![Property::Edges, Property::C3, Property::DegreeDist]
        );
        assert_eq!(
            parse_properties("edges,c5"),
            Err(Error::UnknownProperty("c5".into()))
        );
    }

    #[test]
    fn single_copy_summary_is_the_copy() {
        let report = run_ensemble(&spec(1, Some(1))).unwrap();
        for (p, s) in &report.summary.scalars {
            let v = report.scalar_values(*p)[0];
            assert_eq!((s.min, s.max, s.std), (v, v, 0.0));
            assert_eq!(s.mean, v as f64);
        }
        let PropertyValue::Histogram(h) = &report.results[0].values[&Property::DegreeDist] else {
            panic!()
        };
        let mean = &report.summary.histograms[&Property::DegreeDist];
        assert!(h.iter().all(|(k, v)| mean[k] == *v as f64));
    }

    #[test]
    fn worker_count_does_not_matter() {
        let one = to_json(&run_ensemble(&spec(6, Some(1))).unwrap());
        let four = to_json(&run_ensemble(&spec(6, Some(4))).unwrap());
        assert_eq!(one, four);
    }

    #[test]
    fn json_and_csv_round_trip() {
        let report = run_ensemble(&spec(3, None)).unwrap();
        assert_eq!(from_json(&to_json(&report)).unwrap(), report);

        let mut buf = Vec::new();
        write_csv(&report, &mut buf).unwrap();
        let rows = read_csv(buf.as_slice()).unwrap();
        for r in &report.results {
            let mine: Vec<(String, u128)> = rows
                .iter()
                .filter(|(c, p, _)| *c == r.copy && p != "nodes" && p != "levels")
                .map(|(_, p, v)| (p.clone(), *v))
                .collect();
            let expected: Vec<(String, u128)> = value_rows(&r.values)
                .into_iter()
                .map(|(p, v)| (p, v.parse().unwrap()))
                .collect();
            assert_eq!(mine, expected);
        }
    }

    #[test]
    fn degree_histograms_cover_every_node() {
        let report = run_ensemble(&spec(4, None)).unwrap();
        for r in &report.results {
            let PropertyValue::Histogram(h) = &r.values[&Property::DegreeDist] else {
                panic!()
            };
            assert_eq!(h.values().sum::<u64>(), r.nodes);
            let degree_sum: u128 = h
                .iter()
                .map(|(k, v)| match k {
                    Bin::Value(d) => *d as u128 * *v as u128,
                    Bin::Unreachable => unreachable!(),
                })
                .sum();
            assert_eq!(
                Some(&PropertyValue::Scalar(degree_sum / 2)),
                r.values.get(&Property::Edges)
            );
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(run_ensemble(&spec(0, None)).is_err());
        let mut s = spec(2, None);
        s.params.p = 1;
        assert!(run_ensemble(&s).is_err());
    }
}
