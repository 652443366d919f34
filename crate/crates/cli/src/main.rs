//! `isotemp`: generate, count and classify serially labeled temporal networks.
//!
//! Exit status is 0 on success, 1 on any usage or domain error and 2 when
//! `verify` or `count --method all` finds counting routes that disagree.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use isotemporal::classes::{
    brute_force_classes_with_limit, compare_partitions_with_limit, shortest_swap_script,
    swap_closure_classes_with_limit, DEFAULT_EDGE_LIMIT, HARD_EDGE_CAP,
};
use isotemporal::formulas::{formula_count, lattice_for};
use isotemporal::iso::{label_isomorphism, temporal_isomorphism};
use isotemporal::verify::{
    render_table, verify, verify_family, Verdict, VerificationRow, VerifyOptions,
};
use isotemporal::{
    diaster_swap_permutation, generate, parse_network, temporal_paths, ClassPartition, CountResult,
    EdgeIsomorphism, Error, FamilySpec, Pseudograph, TemporalNetwork,
};

const HARD_CAP_VAR: &str = "ISOTEMP_HARD_CAP";

#[derive(Parser)]
#[command(
    name = "isotemp",
    version,
    about = "Isotemporal classes of temporal networks"
)]
struct Cli {
    /// Largest edge count handed to brute force or swap closure.
    #[arg(long, global = true, default_value_t = DEFAULT_EDGE_LIMIT)]
    brute_limit: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountMethod {
    Formula,
    Lattice,
    Brute,
    Swap,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassMethod {
    Brute,
    Swap,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Number of isotemporal classes of a family.
    Count {
        #[arg(long)]
        family: FamilySpec,
        #[arg(long, value_enum, default_value = "all")]
        method: CountMethod,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Partition the labelings of a graph into classes.
    Classes {
        #[arg(long, required_unless_present = "graph", conflicts_with = "graph")]
        family: Option<FamilySpec>,
        /// Network file; only its graph is used.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        method: ClassMethod,
        /// List the smallest labeling of each class.
        #[arg(long)]
        representatives: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Test two network files for label and temporal isomorphism.
    Iso { a: PathBuf, b: PathBuf },
    /// List the temporal paths of a network file.
    Paths { file: PathBuf },
    /// Swap sequence taking one labeling to another isomorphic one.
    Swapscript { a: PathBuf, b: PathBuf },
    /// Cross-check every counting route over all families up to a size.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Omit per-method timings so output is reproducible.
        #[arg(long)]
        no_timing: bool,
    },
    /// Write a family's graph with labels 1..t in edge order.
    Generate {
        #[arg(long)]
        family: FamilySpec,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn hard_cap() -> Result<usize> {
    match std::env::var(HARD_CAP_VAR) {
        Ok(value) => {
            let cap: usize = value
                .trim()
                .parse()
                .with_context(|| format!("{HARD_CAP_VAR}={value:?} is not a number"))?;
            Ok(cap.min(HARD_EDGE_CAP))
        }
        Err(std::env::VarError::NotPresent) => Ok(HARD_EDGE_CAP),
        Err(err) => bail!("{HARD_CAP_VAR}: {err}"),
    }
}

fn read_network(path: &Path) -> Result<TemporalNetwork> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_network(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cap = hard_cap()?;
    let limit = cli.brute_limit.min(cap);
    match cli.command {
        Command::Count {
            family,
            method,
            format,
        } => count(&family, method, format, limit, cap),
        Command::Classes {
            family,
            graph,
            method,
            representatives,
            format,
        } => {
            let (name, graph) = match (family, graph) {
                (Some(spec), _) => (spec.to_string(), generate(&spec)?),
                (None, Some(path)) => (
                    path.display().to_string(),
                    read_network(&path)?.into_parts().0,
                ),
                (None, None) => unreachable!("clap requires one of --family and --graph"),
            };
            classes(&name, &graph, method, representatives, format, limit)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Iso { a, b } => {
            iso(&read_network(&a)?, &read_network(&b)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Paths { file } => {
            let network = read_network(&file)?;
            for path in temporal_paths(&network)? {
                println!("{}", path.display(&network));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Swapscript { a, b } => {
            swapscript(&read_network(&a)?, &read_network(&b)?, limit)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            max_edges,
            format,
            no_timing,
        } => {
            let options = VerifyOptions {
                max_edges,
                brute_limit: limit,
                hard_cap: cap,
                timing: !no_timing,
            };
            let rows = verify(&options)?;
            match format {
                Format::Text => print!("{}", render_table(&rows)),
                Format::Json => print_json(&rows)?,
            }
            Ok(exit_for(&rows))
        }
        Command::Generate { family, output } => {
            let graph = generate(&family)?;
            let labels = (1..=graph.edge_count()).collect();
            let text = TemporalNetwork::from_labels(graph, labels)?.to_string();
            match output {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_for(rows: &[VerificationRow]) -> ExitCode {
    if rows.iter().any(|r| r.verdict == Verdict::Disagree) {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

#[derive(Serialize)]
struct CountOutput {
    family: String,
    method: &'static str,
    value: Option<u64>,
    basis: Option<String>,
}

fn count(
    spec: &FamilySpec,
    method: CountMethod,
    format: Format,
    limit: usize,
    cap: usize,
) -> Result<ExitCode> {
    let graph = generate(spec)?;
    let (name, result): (&'static str, CountResult) = match method {
        CountMethod::All => {
            let options = VerifyOptions {
                max_edges: graph.edge_count(),
                brute_limit: limit,
                hard_cap: cap,
                timing: false,
            };
            let row = verify_family(spec, &options)?;
            match format {
                Format::Json => print_json(&row)?,
                Format::Text => {
                    let cell =
                        |v: Option<u64>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
                    let formula = row
                        .formula
                        .map_or_else(|| "not-covered".to_string(), |v| v.to_string());
                    println!("family: {}", row.family);
                    println!("formula: {formula} ({})", row.formula_basis);
                    println!("lattice: {}", cell(row.lattice));
                    println!("brute: {}", cell(row.brute));
                    println!("swap: {}", cell(row.swap));
                    println!("verdict: {}", row.verdict);
                }
            }
            return Ok(exit_for(std::slice::from_ref(&row)));
        }
        CountMethod::Formula => ("formula", formula_count(spec)?),
        CountMethod::Lattice => (
            "lattice",
            lattice_for(spec)?.unwrap_or_else(CountResult::not_covered),
        ),
        CountMethod::Brute => {
            let p = brute_force_classes_with_limit(&graph, limit)?;
            ("brute", exact(p.class_count()))
        }
        CountMethod::Swap => {
            let p = swap_closure_classes_with_limit(&graph, limit)?;
            ("swap", exact(p.class_count()))
        }
    };
    match format {
        Format::Text => println!("{result}"),
        Format::Json => print_json(&CountOutput {
            family: spec.to_string(),
            method: name,
            value: result.value,
            basis: matches!(method, CountMethod::Formula | CountMethod::Lattice)
                .then(|| result.basis.to_string()),
        })?,
    }
    Ok(ExitCode::SUCCESS)
}

fn exact(count: usize) -> CountResult {
    CountResult {
        value: Some(count as u64),
        basis: isotemporal::CountBasis::NotCovered,
    }
}

#[derive(Serialize)]
struct PartitionOutput {
    method: &'static str,
    classes: usize,
    block_sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    representatives: Option<Vec<Vec<usize>>>,
}

#[derive(Serialize)]
struct ClassesOutput {
    graph: String,
    labelings: usize,
    partitions: Vec<PartitionOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<(Vec<usize>, Vec<usize>)>,
}

fn summarize(p: &ClassPartition, representatives: bool) -> PartitionOutput {
    PartitionOutput {
        method: p.method.name(),
        classes: p.class_count(),
        block_sizes: p.block_sizes(),
        representatives: representatives.then(|| p.blocks.iter().map(|b| b[0].clone()).collect()),
    }
}

fn classes(
    name: &str,
    graph: &Pseudograph,
    method: ClassMethod,
    representatives: bool,
    format: Format,
    limit: usize,
) -> Result<()> {
    let mut out = ClassesOutput {
        graph: name.to_string(),
        labelings: 0,
        partitions: Vec::new(),
        equal: None,
        witness: None,
    };
    let parts = match method {
        ClassMethod::Brute => vec![brute_force_classes_with_limit(graph, limit)?],
        ClassMethod::Swap => vec![swap_closure_classes_with_limit(graph, limit)?],
        ClassMethod::Both => {
            let report = compare_partitions_with_limit(graph, limit)?;
            out.equal = Some(report.equal);
            out.witness = report.witness;
            vec![report.brute, report.swap]
        }
    };
    out.labelings = parts[0].labeling_count();
    out.partitions = parts
        .iter()
        .map(|p| summarize(p, representatives))
        .collect();

    if format == Format::Json {
        return print_json(&out);
    }
    let join = |xs: &[usize]| {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("graph: {}", out.graph);
    println!("labelings: {}", out.labelings);
    for p in &out.partitions {
        println!("{}: {} classes", p.method, p.classes);
        println!("  block sizes: {}", join(&p.block_sizes));
        for (i, rep) in p.representatives.iter().flatten().enumerate() {
            println!(
                "  class {} (size {}): {}",
                i + 1,
                p.block_sizes[i],
                join(rep)
            );
        }
    }
    if let Some(equal) = out.equal {
        println!("equal: {}", if equal { "yes" } else { "no" });
    }
    if let Some((a, b)) = &out.witness {
        println!("witness: {} ~ {}", join(a), join(b));
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn iso(n: &TemporalNetwork, m: &TemporalNetwork) -> Result<()> {
    let join = |xs: &[usize]| {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let show = |iso: &EdgeIsomorphism| {
        println!("  vertex map: {}", join(&iso.vertex_map));
        println!("  edge map: {}", join(&iso.edge_map));
    };
    let label = label_isomorphism(n, m)?;
    println!("label-isomorphic: {}", yes_no(label.is_some()));
    if let Some(w) = &label {
        show(w);
    }
    let temporal = temporal_isomorphism(n, m)?;
    println!("temporally-isomorphic: {}", yes_no(temporal.is_some()));
    if let Some(w) = &temporal {
        show(w);
    }
    Ok(())
}

/// Uses the central-edge construction where it applies and a breadth-first
/// search over swap moves otherwise.
fn swapscript(n: &TemporalNetwork, m: &TemporalNetwork, limit: usize) -> Result<()> {
    if n.graph() != m.graph() {
        return Err(Error::GraphMismatch.into());
    }
    if temporal_isomorphism(n, m)?.is_none() {
        println!("NOT-ISOMORPHIC");
        return Ok(());
    }
    let script = match diaster_swap_permutation(n, m) {
        Ok(script) => Some(script),
        Err(Error::NoCentralEdge) => shortest_swap_script(n, m, limit)?,
        Err(err) => return Err(err.into()),
    };
    match script {
        Some(script) => {
            print!("{script}");
            println!("# {} swaps", script.len());
        }
        None => println!("NO-SWAP-SEQUENCE"),
    }
    Ok(())
}
