use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hiernet::analytics;
use hiernet::ensemble::{self, EnsembleSpec, OutputFormat, PropertyValue};
use hiernet::format;
use hiernet::gen::{generate_network, GenMode, GenParams};
use hiernet::oracle::{self, DEFAULT_EXPANSION_CAP};
use hiernet::{Error, NetworkModel};

#[derive(Parser, Debug)]
#[command(
    name = "hiernet",
    version,
    about = "Block-hierarchical random networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate one network and write it as a BHNET file.
    Generate {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute properties of a stored network.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated property names [default: edges,c3,c4, or
        /// degree,c3,clustering with --node].
        #[arg(long)]
        props: Option<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report per-node degree, c3 and clustering for node X instead.
        #[arg(long, value_name = "X")]
        node: Option<u64>,
        /// Cross-check counts on the expanded graph.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = DEFAULT_EXPANSION_CAP)]
        cap: u64,
    },
    /// Generate and analyze many seeded copies.
    Ensemble {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long, default_value_t = 100)]
        copies: u64,
        #[arg(long, default_value = "c3,c4")]
        props: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FileFormat::Csv)]
        format: FileFormat,
        /// Worker threads; defaults to one per core.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Write the explicit edge list of a stored network.
    Export {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EXPANSION_CAP)]
        cap: u64,
    },
}

#[derive(Args, Debug)]
#[group(id = "mode", required = true, multiple = false)]
struct ModeArgs {
    /// Bottom-up generation with exactly N nodes.
    #[arg(long, value_name = "N")]
    nodes: Option<u64>,
    /// Top-down generation with G levels.
    #[arg(long, value_name = "G")]
    levels: Option<usize>,
    /// Regular network with p^G nodes.
    #[arg(long, value_name = "G")]
    regular: Option<usize>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    mode: ModeArgs,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    mu: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GenArgs {
    fn params(&self) -> GenParams {
        let m = &self.mode;
        let mode = match (m.nodes, m.levels, m.regular) {
            (Some(n), _, _) => GenMode::ByNodes(n),
            (_, Some(g), _) => GenMode::ByLevels(g),
            (_, _, Some(g)) => GenMode::Regular(g),
            _ => unreachable!("clap enforces one mode"),
        };
        GenParams::new(mode, self.p, self.mu, self.seed)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ReportFormat {
    Text,
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FileFormat {
    Csv,
    Json,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownProperty(_) | Error::InvalidParams(_) | Error::InvalidNode { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Internal(other.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn emit(text: &str, out: Option<&Path>) -> CmdResult {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Internal(e.to_string())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<NetworkModel, Failure> {
    format::read_file(path).map_err(|e| Failure::Internal(annotate(e, path).to_string()))
}

fn annotate(e: Error, path: &Path) -> Error {
    match e {
        Error::Parse { line, msg } => Error::Parse {
            line,
            msg: format!("{}: {msg}", path.display()),
        },
        other => other,
    }
}

fn cmd_generate(gen: &GenArgs, out: &Path) -> CmdResult {
    let model = generate_network(&gen.params())?;
    format::write_file(&model, out)?;
    let edges = analytics::edge_count(&model, model.root())
        .map_err(|e| Failure::Internal(e.to_string()))?;
    println!(
        "N = {}, levels = {}, edges = {edges}",
        model.node_count(),
        model.gamma()
    );
    Ok(())
}

fn render(
    values: &BTreeMap<String, JsonValue>,
    rows: Vec<(String, String)>,
    fmt: ReportFormat,
) -> String {
    let mut s = String::new();
    match fmt {
        ReportFormat::Text => {
            for (k, v) in rows {
                let _ = writeln!(s, "{k} {v}");
            }
        }
        ReportFormat::Csv => {
            s.push_str("property,value\n");
            for (k, v) in rows {
                let _ = writeln!(s, "{k},{v}");
            }
        }
        ReportFormat::Json => {
            s = serde_json::to_string_pretty(values).expect("plain values serialize");
            s.push('\n');
        }
    }
    s
}

fn analyze_node(
    model: &NetworkModel,
    x: u64,
    props: &str,
    fmt: ReportFormat,
    out: Option<&Path>,
) -> CmdResult {
    let profile = analytics::node_profile(model, x)?;
    let mut values = BTreeMap::new();
    let mut rows = Vec::new();
    for name in props.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (text, json) = match name {
            "degree" | "edges" => (
                profile.degree.to_string(),
                JsonValue::Int(profile.degree as u128),
            ),
            "c3" => (
                profile.triangles.to_string(),
                JsonValue::Int(profile.triangles),
            ),
            "clustering" => (
                profile.clustering().to_string(),
                JsonValue::Float(profile.clustering()),
            ),
            other => {
                return Err(Failure::Usage(format!(
                    "`{other}` is not a per-node property (degree, c3, clustering)"
                )))
            }
        };
        let key = if name == "edges" { "degree" } else { name };
        rows.push((key.to_string(), text));
        values.insert(key.to_string(), json);
    }
    values.insert("node".into(), JsonValue::Int(x as u128));
    emit(&render(&values, rows, fmt), out)
}

fn verify(model: &NetworkModel, cap: u64) -> Result<Vec<String>, Failure> {
    let g = oracle::expand(model, cap)?;
    let root = analytics::aggregates(model)?.root();
    let mut bad = Vec::new();
    let checks = [
        ("edges", root.edges, g.edges().len() as u128),
        ("c3", root.triangles, oracle::bf_triangles(&g)),
        ("c4", root.four_cycles, oracle::bf_four_cycles(&g)),
        ("wedges", root.wedges, oracle::bf_wedges(&g)),
    ];
    for (name, tree, brute) in checks {
        if tree != brute {
            bad.push(format!("{name}: tree {tree}, expanded graph {brute}"));
        }
    }
    Ok(bad)
}

#[allow(clippy::too_many_arguments)]
fn cmd_analyze(
    input: &Path,
    props: Option<&str>,
    fmt: ReportFormat,
    out: Option<&Path>,
    node: Option<u64>,
    check: bool,
    cap: u64,
) -> CmdResult {
    let model = load(input)?;
    if let Some(x) = node {
        return analyze_node(&model, x, props.unwrap_or("degree,c3,clustering"), fmt, out);
    }
    let props = ensemble::parse_properties(props.unwrap_or("edges,c3,c4"))?;
    let mut values = BTreeMap::new();
    for &p in &props {
        values.insert(p, ensemble::evaluate(&model, p)?);
    }
    if check {
        let bad = verify(&model, cap)?;
        if !bad.is_empty() {
            for line in &bad {
                eprintln!("verify: {line}");
            }
            return Err(Failure::Internal(
                "tree counts disagree with the expanded graph".into(),
            ));
        }
        eprintln!("verify: counts agree with the expanded graph");
    }
    let json: BTreeMap<String, JsonValue> = values
        .iter()
        .map(|(p, v)| (p.to_string(), JsonValue::from(v)))
        .collect();
    emit(&render(&json, ensemble::value_rows(&values), fmt), out)
}

/// Scalars as exact JSON integers, histograms as `{bin: count}`.
#[derive(Serialize)]
#[serde(untagged)]
enum JsonValue {
    Int(u128),
    Float(f64),
    Bins(BTreeMap<String, u64>),
}

impl From<&PropertyValue> for JsonValue {
    fn from(v: &PropertyValue) -> Self {
        match v {
            PropertyValue::Scalar(x) => JsonValue::Int(*x),
            PropertyValue::Histogram(h) => {
                JsonValue::Bins(h.iter().map(|(k, c)| (k.to_string(), *c)).collect())
            }
        }
    }
}

fn cmd_ensemble(
    gen: &GenArgs,
    copies: u64,
    props: &str,
    out: &Path,
    fmt: FileFormat,
    workers: Option<usize>,
) -> CmdResult {
    let spec = EnsembleSpec {
        params: gen.params(),
        copies,
        properties: ensemble::parse_properties(props)?,
        workers,
    };
    spec.params.check()?;
    let report = ensemble::run_ensemble(&spec).map_err(|e| Failure::Internal(e.to_string()))?;
    let fmt = match fmt {
        FileFormat::Csv => OutputFormat::Csv,
        FileFormat::Json => OutputFormat::Json,
    };
    let files = ensemble::write_report(&report, out, fmt)?;
    for (p, s) in &report.summary.scalars {
        println!(
            "{p}: mean {} std {} min {} max {}",
            s.mean, s.std, s.min, s.max
        );
    }
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn cmd_export(input: &Path, out: &Path, cap: u64) -> CmdResult {
    let model = load(input)?;
    let g = oracle::expand(&model, cap).map_err(|e| Failure::Internal(e.to_string()))?;
    std::fs::write(out, g.edge_list()).map_err(|e| Failure::Internal(e.to_string()))?;
    println!("{} edges", g.edges().len());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate { gen, out } => cmd_generate(gen, out),
        Command::Analyze {
            input,
            props,
            format,
            out,
            node,
            verify,
            cap,
        } => cmd_analyze(
            input,
            props.as_deref(),
            *format,
            out.as_deref(),
            *node,
            *verify,
            *cap,
        ),
        Command::Ensemble {
            gen,
            copies,
            props,
            out,
            format,
            workers,
        } => cmd_ensemble(gen, *copies, props, out, *format, *workers),
        Command::Export { input, out, cap } => cmd_export(input, out, *cap),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
