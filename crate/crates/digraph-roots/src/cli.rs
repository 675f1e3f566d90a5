//! Command-line front end. Every subcommand is a thin adapter over one
//! library entry point: parse files, call, format. Exit codes: 0 for
//! success or a positive decision, 1 for a negative decision, 2 for usage
//! or input errors, 3 for an exhausted search budget.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::experiment::{run_experiment, ExperimentConfig, ExperimentReport};
use crate::io::{read_graph_file, serialize_graph, to_dot, write_graph_file, GraphFile};
use crate::isomorphism::find_isomorphism;
use crate::power::{power, verify_root};
use crate::reduction::{reduce, split_components, subdivide, suspend};
use crate::rootsearch::{backtracking_root_search, exhaustive_roots, SearchStatus};
use crate::subdivision::{
    decide_root_in_class, extract_isomorphisms, find_core, seed_free_path, ClassRootDecision,
};

const EXIT_OK: i32 = 0;
const EXIT_NEGATIVE: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(
    name = "digraph-roots",
    about = "Digraph k-th powers, k-th roots, and the root/isomorphism reductions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputOpts {
    /// Write the resulting graph to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit DOT instead of the text graph format.
    #[arg(long)]
    dot: bool,
    /// Print a single-line JSON record instead of human-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Raise a digraph to its k-th power.
    Power {
        graph: PathBuf,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Check whether a candidate digraph is a k-th root of a target.
    VerifyRoot {
        candidate: PathBuf,
        target: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        json: bool,
    },
    /// List every k-th root of a small digraph (at most 5 vertices).
    RootExhaustive {
        graph: PathBuf,
        #[arg(long)]
        k: u32,
        /// Write each root to <DIR>/root-<index>.graph.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Complete pruned search for one k-th root within a node budget.
    RootSearch {
        graph: PathBuf,
        #[arg(long)]
        k: u32,
        /// Search-tree node budget.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Build the k-component instance whose k-th-root existence encodes
    /// isomorphism of the two inputs.
    Reduce {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        k: u32,
        /// Also list per-vertex provenance in human output.
        #[arg(long)]
        provenance: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Add a source and a hub vertex to a digraph.
    Suspend {
        graph: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Replace every arc by a fresh vertex and two arcs.
    Subdivide {
        graph: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Recover the core of a complete subdivision, or report why none
    /// exists.
    FindCore {
        graph: PathBuf,
        /// Write the contracted parent digraph to this file.
        #[arg(long)]
        parent_out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Read the component isomorphisms off a known k-th root.
    ExtractIso {
        graph: PathBuf,
        root: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        json: bool,
    },
    /// Decide k-th root existence for a digraph with k components of
    /// subdivision shape.
    DecideClassRoot {
        graph: PathBuf,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Split a k-component digraph into the two digraphs whose isomorphism
    /// is equivalent to all its components being pairwise isomorphic.
    Theorem2Split {
        graph: PathBuf,
        #[arg(long)]
        k: u32,
        /// Write the left digraph (k-1 copies of component 0) here.
        #[arg(long)]
        out_left: Option<PathBuf>,
        /// Write the right digraph (components 1..k) here.
        #[arg(long)]
        out_right: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Test two digraphs for isomorphism.
    Iso {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run seeded random trials checking that root existence of the built
    /// instance always matches isomorphism of the sampled pair.
    Experiment {
        #[arg(long, default_value_t = 200)]
        trials: u32,
        /// Largest sampled vertex count.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Comma-separated k values, cycled per trial.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        k_set: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Confirm isomorphism answers against permutation brute force.
        #[arg(long)]
        cross_check: bool,
        #[arg(long)]
        json: bool,
    },
}

/// Machine-output record; one JSON object per invocation.
#[derive(serde::Serialize)]
struct Record {
    command: &'static str,
    inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    result: Value,
    #[serde(rename = "witness-file", skip_serializing_if = "Option::is_none")]
    witness_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    evidence: Option<Value>,
    statistics: Value,
}

impl Record {
    fn new(command: &'static str, inputs: &[&Path], k: Option<u32>) -> Self {
        Record {
            command,
            inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
            k,
            result: Value::Null,
            witness_file: None,
            evidence: None,
            statistics: json!({}),
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand,
/// writing to the given sinks. Returns the process exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Power { graph, k, output } => cmd_power(out, &graph, k, &output),
        Command::VerifyRoot {
            candidate,
            target,
            k,
            json,
        } => cmd_verify_root(out, &candidate, &target, k, json),
        Command::RootExhaustive {
            graph,
            k,
            out_dir,
            json,
        } => cmd_root_exhaustive(out, &graph, k, out_dir.as_deref(), json),
        Command::RootSearch {
            graph,
            k,
            budget,
            output,
        } => cmd_root_search(out, &graph, k, budget, &output),
        Command::Reduce {
            left,
            right,
            k,
            provenance,
            output,
        } => cmd_reduce(out, &left, &right, k, provenance, &output),
        Command::Suspend { graph, output } => cmd_suspend(out, &graph, &output),
        Command::Subdivide { graph, output } => cmd_subdivide(out, &graph, &output),
        Command::FindCore {
            graph,
            parent_out,
            json,
        } => cmd_find_core(out, &graph, parent_out.as_deref(), json),
        Command::ExtractIso { graph, root, k, json } => {
            cmd_extract_iso(out, &graph, &root, k, json)
        }
        Command::DecideClassRoot { graph, k, output } => {
            cmd_decide_class_root(out, &graph, k, &output)
        }
        Command::Theorem2Split {
            graph,
            k,
            out_left,
            out_right,
            json,
        } => cmd_split(out, &graph, k, out_left.as_deref(), out_right.as_deref(), json),
        Command::Iso { left, right, json } => cmd_iso(out, &left, &right, json),
        Command::Experiment {
            trials,
            max_n,
            k_set,
            seed,
            cross_check,
            json,
        } => cmd_experiment(out, trials, max_n, k_set, seed, cross_check, json),
    }
}

fn load(path: &Path) -> Result<Digraph> {
    read_graph_file(path).map(|f| f.graph)
}

fn emit_record(out: &mut dyn Write, record: &Record) {
    let line = serde_json::to_string(record).expect("records serialize");
    let _ = writeln!(out, "{line}");
}

/// Renders `graph` as text or DOT, writes it to `path` when given, and
/// returns (rendered, written path).
fn render_graph(
    graph: &Digraph,
    path: Option<&Path>,
    dot: bool,
    notes: Option<&[String]>,
) -> Result<(String, Option<String>)> {
    let rendered = if dot {
        to_dot(graph, None, notes)
    } else {
        serialize_graph(graph)
    };
    let written = match path {
        Some(p) => {
            std::fs::write(p, &rendered).map_err(|source| Error::Io {
                path: p.display().to_string(),
                source,
            })?;
            Some(p.display().to_string())
        }
        None => None,
    };
    Ok((rendered, written))
}

fn graph_value(d: &Digraph) -> Value {
    json!({
        "vertices": d.vertex_count(),
        "arcs": d.arc_count(),
        "graph": serialize_graph(d),
    })
}

fn cmd_power(out: &mut dyn Write, path: &Path, k: u32, opts: &OutputOpts) -> Result<i32> {
    let d = load(path)?;
    let p = power(&d, k)?;
    let (rendered, written) = render_graph(&p, opts.out.as_deref(), opts.dot, None)?;
    if opts.json {
        let mut record = Record::new("power", &[path], Some(k));
        record.result = graph_value(&p);
        record.witness_file = written;
        emit_record(out, &record);
    } else if let Some(file) = written {
        let _ = writeln!(
            out,
            "wrote {file} ({} vertices, {} arcs)",
            p.vertex_count(),
            p.arc_count()
        );
    } else {
        let _ = write!(out, "{rendered}");
    }
    Ok(EXIT_OK)
}

fn cmd_verify_root(
    out: &mut dyn Write,
    candidate: &Path,
    target: &Path,
    k: u32,
    json: bool,
) -> Result<i32> {
    let r = load(candidate)?;
    let d = load(target)?;
    let is_root = verify_root(&r, k, &d)?;
    if json {
        let mut record = Record::new("verify-root", &[candidate, target], Some(k));
        record.result = json!({ "is-root": is_root });
        emit_record(out, &record);
    } else if is_root {
        let _ = writeln!(out, "yes: raising the candidate to the power {k} gives the target");
    } else {
        let _ = writeln!(out, "no: raising the candidate to the power {k} does not give the target");
    }
    Ok(if is_root { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_root_exhaustive(
    out: &mut dyn Write,
    path: &Path,
    k: u32,
    out_dir: Option<&Path>,
    json: bool,
) -> Result<i32> {
    let d = load(path)?;
    let roots = exhaustive_roots(&d, k)?;
    let mut files = Vec::new();
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.display().to_string(),
            source,
        })?;
        for (i, root) in roots.iter().enumerate() {
            let file = dir.join(format!("root-{i:03}.graph"));
            write_graph_file(&file, &GraphFile::bare(root.clone()))?;
            files.push(file.display().to_string());
        }
    }
    if json {
        let mut record = Record::new("root-exhaustive", &[path], Some(k));
        record.result = json!({
            "count": roots.len(),
            "roots": roots.iter().map(serialize_graph).collect::<Vec<_>>(),
        });
        record.witness_file = files.first().cloned();
        record.statistics = json!({ "candidates": 1u64 << (d.vertex_count() * d.vertex_count()) });
        emit_record(out, &record);
    } else {
        let _ = writeln!(out, "{} root(s) of order {k}", roots.len());
        for (i, root) in roots.iter().enumerate() {
            match files.get(i) {
                Some(f) => {
                    let _ = writeln!(out, "wrote {f}");
                }
                None => {
                    let _ = writeln!(out, "# root {i}");
                    let _ = write!(out, "{}", serialize_graph(root));
                }
            }
        }
    }
    Ok(if roots.is_empty() { EXIT_NEGATIVE } else { EXIT_OK })
}

fn cmd_root_search(
    out: &mut dyn Write,
    path: &Path,
    k: u32,
    budget: u64,
    opts: &OutputOpts,
) -> Result<i32> {
    let d = load(path)?;
    let outcome = backtracking_root_search(&d, k, budget)?;
    let nodes = outcome.stats.nodes;
    let (status_text, code) = match outcome.status {
        SearchStatus::RootFound => ("root-found", EXIT_OK),
        SearchStatus::NoRoot => ("no-root", EXIT_NEGATIVE),
        SearchStatus::BudgetExhausted => ("budget-exhausted", EXIT_BUDGET),
    };
    let mut rendered = None;
    let mut written = None;
    if let Some(witness) = &outcome.witness {
        let (r, w) = render_graph(witness, opts.out.as_deref(), opts.dot, None)?;
        rendered = Some(r);
        written = w;
    }
    if opts.json {
        let mut record = Record::new("root-search", &[path], Some(k));
        record.result = json!({
            "status": status_text,
            "witness": outcome.witness.as_ref().map(serialize_graph),
        });
        record.witness_file = written;
        record.statistics = json!({ "nodes": nodes, "budget": budget });
        emit_record(out, &record);
        return Ok(code);
    }
    match outcome.status {
        SearchStatus::RootFound => {
            let _ = writeln!(out, "root found after {nodes} node(s)");
            match written {
                Some(file) => {
                    let _ = writeln!(out, "wrote {file}");
                }
                None => {
                    let _ = write!(out, "{}", rendered.expect("witness rendered"));
                }
            }
        }
        SearchStatus::NoRoot => {
            let _ = writeln!(out, "no root of order {k} exists (search exhausted after {nodes} node(s))");
        }
        SearchStatus::BudgetExhausted => {
            let _ = writeln!(
                out,
                "budget of {budget} node(s) exhausted without an answer; root existence undecided"
            );
        }
    }
    Ok(code)
}

fn cmd_reduce(
    out: &mut dyn Write,
    left: &Path,
    right: &Path,
    k: u32,
    provenance: bool,
    opts: &OutputOpts,
) -> Result<i32> {
    let d1 = load(left)?;
    let d2 = load(right)?;
    let instance = reduce(&d1, &d2, k)?;
    let notes: Vec<String> = instance.provenance.iter().map(|p| p.to_string()).collect();
    let (rendered, written) =
        render_graph(&instance.graph, opts.out.as_deref(), opts.dot, Some(&notes))?;
    if opts.json {
        let mut record = Record::new("reduce", &[left, right], Some(k));
        record.result = graph_value(&instance.graph);
        record.evidence = Some(json!({ "provenance": notes }));
        record.witness_file = written;
        emit_record(out, &record);
        return Ok(EXIT_OK);
    }
    match written {
        Some(file) => {
            let _ = writeln!(
                out,
                "wrote {file} ({} components, {} vertices, {} arcs)",
                k,
                instance.graph.vertex_count(),
                instance.graph.arc_count()
            );
        }
        None => {
            let _ = write!(out, "{rendered}");
        }
    }
    if provenance {
        for (v, p) in instance.provenance.iter().enumerate() {
            let _ = writeln!(out, "# vertex {v}: {p}");
        }
    }
    Ok(EXIT_OK)
}

fn cmd_suspend(out: &mut dyn Write, path: &Path, opts: &OutputOpts) -> Result<i32> {
    let d = load(path)?;
    let suspension = suspend(&d)?;
    let (rendered, written) = render_graph(&suspension.graph, opts.out.as_deref(), opts.dot, None)?;
    if opts.json {
        let mut record = Record::new("suspend", &[path], None);
        record.result = graph_value(&suspension.graph);
        record.evidence = Some(json!({
            "source": suspension.source,
            "hub": suspension.hub,
        }));
        record.witness_file = written;
        emit_record(out, &record);
        return Ok(EXIT_OK);
    }
    match written {
        Some(file) => {
            let _ = writeln!(out, "wrote {file}");
        }
        None => {
            let _ = write!(out, "{rendered}");
        }
    }
    let _ = writeln!(out, "# source {} hub {}", suspension.source, suspension.hub);
    Ok(EXIT_OK)
}

fn cmd_subdivide(out: &mut dyn Write, path: &Path, opts: &OutputOpts) -> Result<i32> {
    let d = load(path)?;
    let (s, witness) = subdivide(&d);
    let (rendered, written) = render_graph(&s, opts.out.as_deref(), opts.dot, None)?;
    if opts.json {
        let mut record = Record::new("subdivide", &[path], None);
        record.result = graph_value(&s);
        record.evidence = Some(json!({
            "core-size": witness.core().len(),
            "subdivision-vertices": witness.complement().len(),
        }));
        record.witness_file = written;
        emit_record(out, &record);
        return Ok(EXIT_OK);
    }
    match written {
        Some(file) => {
            let _ = writeln!(out, "wrote {file}");
        }
        None => {
            let _ = write!(out, "{rendered}");
        }
    }
    Ok(EXIT_OK)
}

fn cmd_find_core(
    out: &mut dyn Write,
    path: &Path,
    parent_out: Option<&Path>,
    json: bool,
) -> Result<i32> {
    let d = load(path)?;
    match find_core(&d) {
        Ok(witness) => {
            if let Some(p) = parent_out {
                write_graph_file(p, &GraphFile::bare(witness.parent().clone()))?;
            }
            if json {
                let mut record = Record::new("find-core", &[path], None);
                record.result = json!({
                    "is-subdivision": true,
                    "core": witness.core(),
                    "parent": serialize_graph(witness.parent()),
                });
                record.witness_file = parent_out.map(|p| p.display().to_string());
                emit_record(out, &record);
            } else {
                let core_list = witness
                    .core()
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = writeln!(out, "core ({} vertices): {}", witness.core().len(), core_list);
                let _ = writeln!(out, "parent:");
                let _ = write!(out, "{}", serialize_graph(witness.parent()));
                if let Some(p) = parent_out {
                    let _ = writeln!(out, "wrote {}", p.display());
                }
            }
            Ok(EXIT_OK)
        }
        Err(Error::NotASubdivision(defect)) => {
            if json {
                let mut record = Record::new("find-core", &[path], None);
                record.result = json!({ "is-subdivision": false });
                record.evidence = Some(json!({ "defect": defect.to_string() }));
                emit_record(out, &record);
            } else {
                let _ = writeln!(out, "not a complete subdivision: {defect}");
            }
            Ok(EXIT_NEGATIVE)
        }
        Err(e) => Err(e),
    }
}

fn cmd_extract_iso(
    out: &mut dyn Write,
    graph: &Path,
    root: &Path,
    k: u32,
    json: bool,
) -> Result<i32> {
    let d = load(graph)?;
    let r = load(root)?;
    let maps = extract_isomorphisms(&d, &r, k)?;
    // The seed path doubles as cheap evidence that the root has the free
    // path structure the extraction used.
    let seed = seed_free_path(&d, &r, k)?;
    if json {
        let mut record = Record::new("extract-iso", &[graph, root], Some(k));
        record.result = json!({
            "maps": maps.iter().map(|m| m.as_slice().to_vec()).collect::<Vec<_>>(),
        });
        record.evidence = Some(json!({ "seed-path": seed.vertices() }));
        emit_record(out, &record);
        return Ok(EXIT_OK);
    }
    let _ = writeln!(
        out,
        "extracted {} isomorphism(s) from component 0 onto components 1..{} (component-local indices)",
        maps.len(),
        k
    );
    for (j, map) in maps.iter().enumerate() {
        let images = map
            .as_slice()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "map to component {}: {}", j + 1, images);
    }
    Ok(EXIT_OK)
}

fn cmd_decide_class_root(out: &mut dyn Write, path: &Path, k: u32, opts: &OutputOpts) -> Result<i32> {
    let d = load(path)?;
    match decide_root_in_class(&d, k)? {
        ClassRootDecision::Root(root) => {
            let (rendered, written) = render_graph(&root, opts.out.as_deref(), opts.dot, None)?;
            if opts.json {
                let mut record = Record::new("decide-class-root", &[path], Some(k));
                record.result = json!({
                    "status": "root",
                    "root": serialize_graph(&root),
                });
                record.witness_file = written;
                emit_record(out, &record);
                return Ok(EXIT_OK);
            }
            let _ = writeln!(out, "root found and verified");
            match written {
                Some(file) => {
                    let _ = writeln!(out, "wrote {file}");
                }
                None => {
                    let _ = write!(out, "{rendered}");
                }
            }
            Ok(EXIT_OK)
        }
        ClassRootDecision::NoRoot { components } => {
            if opts.json {
                let mut record = Record::new("decide-class-root", &[path], Some(k));
                record.result = json!({ "status": "no-root" });
                record.evidence = Some(json!({
                    "non-isomorphic-components": [components.0, components.1],
                }));
                emit_record(out, &record);
                return Ok(EXIT_NEGATIVE);
            }
            let _ = writeln!(
                out,
                "no root of order {k}: components {} and {} are not isomorphic",
                components.0, components.1
            );
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_split(
    out: &mut dyn Write,
    path: &Path,
    k: u32,
    out_left: Option<&Path>,
    out_right: Option<&Path>,
    json: bool,
) -> Result<i32> {
    let d = load(path)?;
    let (left, right) = split_components(&d, k)?;
    for (graph, target) in [(&left, out_left), (&right, out_right)] {
        if let Some(p) = target {
            write_graph_file(p, &GraphFile::bare(graph.clone()))?;
        }
    }
    if json {
        let mut record = Record::new("theorem2-split", &[path], Some(k));
        record.result = json!({
            "left": serialize_graph(&left),
            "right": serialize_graph(&right),
        });
        emit_record(out, &record);
        return Ok(EXIT_OK);
    }
    match (out_left, out_right) {
        (Some(l), Some(r)) => {
            let _ = writeln!(out, "wrote {} and {}", l.display(), r.display());
        }
        _ => {
            let _ = writeln!(out, "# left: {} copies of component 0", k - 1);
            let _ = write!(out, "{}", serialize_graph(&left));
            let _ = writeln!(out, "# right: components 1..{k}");
            let _ = write!(out, "{}", serialize_graph(&right));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_iso(out: &mut dyn Write, left: &Path, right: &Path, json: bool) -> Result<i32> {
    let d1 = load(left)?;
    let d2 = load(right)?;
    let found = find_isomorphism(&d1, &d2);
    if json {
        let mut record = Record::new("iso", &[left, right], None);
        record.result = json!({
            "isomorphic": found.is_some(),
            "map": found.as_ref().map(|m| m.as_slice().to_vec()),
        });
        emit_record(out, &record);
        return Ok(if found.is_some() { EXIT_OK } else { EXIT_NEGATIVE });
    }
    match found {
        Some(map) => {
            let images = map
                .as_slice()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(out, "isomorphic; image of each vertex in order: {images}");
            Ok(EXIT_OK)
        }
        None => {
            let _ = writeln!(out, "not isomorphic");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_experiment(
    out: &mut dyn Write,
    trials: u32,
    max_n: usize,
    k_set: Vec<u32>,
    seed: u64,
    cross_check: bool,
    json: bool,
) -> Result<i32> {
    let config = ExperimentConfig {
        trials,
        max_n,
        ks: k_set,
        seed,
        cross_check,
    };
    let report = run_experiment(&config)?;
    if json {
        let mut record = Record::new("experiment", &[], None);
        record.result = experiment_value(&config, &report);
        record.statistics = json!({ "trials": report.trials() });
        emit_record(out, &record);
    } else {
        render_experiment_table(out, &config, &report);
    }
    Ok(if report.agreement() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn experiment_value(config: &ExperimentConfig, report: &ExperimentReport) -> Value {
    json!({
        "trials": config.trials,
        "max-n": config.max_n,
        "k-set": config.ks,
        "seed": config.seed,
        "cross-check": config.cross_check,
        "matrix": {
            "root-and-isomorphic": report.matrix[1][1],
            "root-not-isomorphic": report.matrix[1][0],
            "no-root-isomorphic": report.matrix[0][1],
            "no-root-not-isomorphic": report.matrix[0][0],
        },
        "agreement": report.agreement(),
        "mismatched-trials": report.mismatches,
        "cross-check-failures": report.cross_check_failures,
    })
}

fn render_experiment_table(
    out: &mut dyn Write,
    config: &ExperimentConfig,
    report: &ExperimentReport,
) {
    let ks = config
        .ks
        .iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let _ = writeln!(
        out,
        "trials {}  max-n {}  k-set {}  seed {}  cross-check {}",
        config.trials,
        config.max_n,
        ks,
        config.seed,
        if config.cross_check { "on" } else { "off" }
    );
    let _ = writeln!(out, "{:<12} {:>12} {:>16}", "", "isomorphic", "not isomorphic");
    let _ = writeln!(
        out,
        "{:<12} {:>12} {:>16}",
        "root found", report.matrix[1][1], report.matrix[1][0]
    );
    let _ = writeln!(
        out,
        "{:<12} {:>12} {:>16}",
        "no root", report.matrix[0][1], report.matrix[0][0]
    );
    let _ = writeln!(
        out,
        "agreement: {}",
        if report.agreement() { "yes" } else { "NO" }
    );
    if !report.mismatches.is_empty() {
        let list = report
            .mismatches
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "mismatched trials: {list}");
    }
    if !report.cross_check_failures.is_empty() {
        let list = report
            .cross_check_failures
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "cross-check failures: {list}");
    }
}
