//! Command-line driver. Payload goes to `out`, diagnostics to `err`.
//!
//! Exit codes: 0 accepted or success, 1 rejected, 2 usage, format or cap
//! error, 3 internal inconsistency.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bigraph::{BiGraph, Bipartition};
use crate::formats::{export_dot, parse_graph, parse_graph_document, parse_tree, serialize_graph, serialize_tree};
use crate::genlab::{
    cross_check, enumerate_bipartite, random_bipartite, random_tree, CrossCheckOptions, EnumConfig, TreeGenConfig,
    PRNG_ALGORITHM,
};
use crate::oracles::{
    find_forbidden, hereditary_heart_check_with_cap, refine_witness, HeartCheck, OracleError, DEFAULT_HEREDITARY_CAP,
};
use crate::recognition::{heart_tree, Verdict, Witness};
use crate::semantics::{
    check_explains, check_least_resolved, directed_qbmg, explain, validate_lrt_structure, SemanticsError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Rejected = 1,
    UsageError = 2,
    Inconsistency = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Parser)]
#[command(name = "qbmg", version, about = "Recognize undirected two-colored quasi-best match graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WitnessKind {
    Heartless,
    Forbidden,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Forbidden,
    Hereditary,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print an explaining tree, or a witness of non-membership.
    Recognize {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "heartless")]
        witness: WitnessKind,
        /// Also write the tree (or the rejected graph) as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print the graph explained by a tree.
    Explain {
        tree: PathBuf,
        /// Print the directed arcs as `a X Y` lines instead.
        #[arg(long)]
        directed: bool,
    },
    /// Compare a tree against a graph.
    CheckTree { tree: PathBuf, graph: PathBuf },
    /// Decide membership with one of the independent oracles.
    Oracle {
        graph: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Largest graph the hereditary check will enumerate.
        #[arg(long, env = "QBMG_ORACLE_CAP", default_value_t = DEFAULT_HEREDITARY_CAP)]
        cap: usize,
    },
    /// Print a seeded random instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Enumerate small bipartite graphs, optionally cross-checking all three tests.
    Enumerate {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        cross_check: bool,
        #[arg(long)]
        connected_only: bool,
        #[arg(long, env = "QBMG_ORACLE_CAP", default_value_t = DEFAULT_HEREDITARY_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Subcommand)]
enum GenKind {
    Tree {
        #[arg(long)]
        leaves: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        internal_bias: f64,
        #[arg(long, default_value_t = 0.3)]
        trunc_self_prob: f64,
        #[arg(long, default_value_t = 0.5)]
        color_prob: f64,
    },
    Graph {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edge_prob: f64,
        #[arg(long)]
        seed: u64,
    },
}

/// Failure carrying the exit status to report.
struct Failure(ExitStatus, String);

impl Failure {
    fn usage(msg: impl ToString) -> Self {
        Failure(ExitStatus::UsageError, msg.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::InternalInconsistency(_) => Failure(ExitStatus::Inconsistency, e.to_string()),
            other => Failure::usage(other),
        }
    }
}

impl From<SemanticsError> for Failure {
    fn from(e: SemanticsError) -> Self {
        Failure::usage(e)
    }
}

type Outcome = Result<ExitStatus, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                ExitStatus::UsageError
            } else {
                let _ = write!(out, "{text}");
                ExitStatus::Success
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(status) => status,
        Err(Failure(status, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            status
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Recognize { graph, witness, dot } => recognize(&graph, witness, dot.as_deref(), out),
        Command::Explain { tree, directed } => explain_cmd(&tree, directed, out),
        Command::CheckTree { tree, graph } => check_tree(&tree, &graph, out),
        Command::Oracle { graph, method, cap } => oracle(&graph, method, cap, out),
        Command::Gen { kind } => gen(kind, out),
        Command::Enumerate { max_n, cross_check, connected_only, cap } => {
            enumerate(max_n, cross_check, connected_only, cap, out, err)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::usage(format!("writing output: {e}")))
}

fn load_graph(path: &Path) -> Result<BiGraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Colored graph, or the odd cycle that rules it out.
fn load_graph_or_cycle(path: &Path) -> Result<(Vec<String>, Result<BiGraph, Witness>), Failure> {
    let doc = parse_graph_document(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let names = doc.names.clone();
    match doc.into_bipartition().map_err(|e| Failure::usage(format!("{}: {e}", path.display())))? {
        Bipartition::Proper(g) => Ok((names, Ok(g))),
        Bipartition::OddCycle(walk) => Ok((names, Err(Witness::OddCycle(walk)))),
    }
}

fn write_dot(path: Option<&Path>, dot: impl FnOnce() -> String) -> Result<(), Failure> {
    if let Some(path) = path {
        fs::write(path, dot()).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn reject(out: &mut dyn Write, names: &[String], w: &Witness) -> Outcome {
    emit(out, &format!("{}\n", w.describe(names)))?;
    Ok(ExitStatus::Rejected)
}

fn recognize(path: &Path, kind: WitnessKind, dot: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let (names, loaded) = load_graph_or_cycle(path)?;
    let g = match loaded {
        Ok(g) => g,
        Err(cycle) => return reject(out, &names, &cycle),
    };
    match heart_tree(&g).map_err(Failure::usage)? {
        Verdict::Accepted(t) => {
            write_dot(dot, || export_dot(&t))?;
            emit(out, &format!("{}\n", serialize_tree(&t)))?;
            Ok(ExitStatus::Success)
        }
        Verdict::Rejected(w) => {
            write_dot(dot, || export_dot(&g))?;
            let w = match kind {
                WitnessKind::Heartless => w,
                WitnessKind::Forbidden => refine_witness(&g, &w)?,
            };
            reject(out, &names, &w)
        }
    }
}

fn load_tree(path: &Path) -> Result<crate::phylo::PhyloTree, Failure> {
    parse_tree(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn explain_cmd(path: &Path, directed: bool, out: &mut dyn Write) -> Outcome {
    let t = load_tree(path)?;
    if directed {
        let d = directed_qbmg(&t);
        let mut text = String::new();
        for (x, y) in d.arcs() {
            text.push_str(&format!("a {} {}\n", d.names[x], d.names[y]));
        }
        emit(out, &text)?;
    } else {
        emit(out, &serialize_graph(&explain(&t).graph))?;
    }
    Ok(ExitStatus::Success)
}

fn check_tree(tree: &Path, graph: &Path, out: &mut dyn Write) -> Outcome {
    let t = load_tree(tree)?;
    let g = load_graph(graph)?;
    let explains = check_explains(&t, &g)?;
    let (least_resolved, clean) = if explains {
        (check_least_resolved(&t, &g)?, validate_lrt_structure(&t, &g)?.is_empty())
    } else {
        (false, false)
    };
    emit(out, &format!("explains={explains}\nleast_resolved={least_resolved}\nlrt_structure_clean={clean}\n"))?;
    Ok(if explains { ExitStatus::Success } else { ExitStatus::Rejected })
}

fn oracle(path: &Path, method: Method, cap: usize, out: &mut dyn Write) -> Outcome {
    let (names, loaded) = load_graph_or_cycle(path)?;
    let g = match loaded {
        Ok(g) => g,
        Err(cycle) => {
            emit(out, "reject\n")?;
            return reject(out, &names, &cycle);
        }
    };
    let witness = match method {
        Method::Forbidden => find_forbidden(&g).map(Witness::from),
        Method::Hereditary => match hereditary_heart_check_with_cap(&g, cap)? {
            HeartCheck::Holds => None,
            HeartCheck::Violated(vs) => Some(Witness::HeartlessSubgraph(vs)),
        },
    };
    match witness {
        None => {
            emit(out, "accept\n")?;
            Ok(ExitStatus::Success)
        }
        Some(w) => {
            emit(out, "reject\n")?;
            reject(out, &names, &w)
        }
    }
}

fn gen(kind: GenKind, out: &mut dyn Write) -> Outcome {
    match kind {
        GenKind::Tree { leaves, seed, internal_bias, trunc_self_prob, color_prob } => {
            let cfg = TreeGenConfig { leaf_count: leaves, seed, internal_bias, trunc_self_prob, color_prob };
            let t = random_tree(&cfg).map_err(Failure::usage)?;
            emit(out, &format!("{}\n", serialize_tree(&t)))?;
        }
        GenKind::Graph { vertices, edge_prob, seed } => {
            let g = random_bipartite(vertices, edge_prob, seed).map_err(Failure::usage)?;
            emit(out, &format!("# {PRNG_ALGORITHM} seed {seed}\n"))?;
            emit(out, &serialize_graph(&g))?;
        }
    }
    Ok(ExitStatus::Success)
}

fn enumerate(
    max_n: usize,
    check: bool,
    connected_only: bool,
    cap: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let cfg = EnumConfig { connected_only, ..EnumConfig::new(max_n) };
    let graphs = enumerate_bipartite(&cfg).map_err(Failure::usage)?;
    if !check {
        for (i, g) in graphs.enumerate() {
            emit(out, &format!("# graph {}\n{}", i + 1, serialize_graph(&g)))?;
        }
        return Ok(ExitStatus::Success);
    }
    let opts = CrossCheckOptions { hereditary_cap: cap, ..CrossCheckOptions::default() };
    let mut report = cross_check(graphs, &opts)?;
    report.header = vec![
        format!("corpus: labeled bipartite graphs, n <= {max_n}, connected_only = {connected_only}"),
        format!("hereditary_cap: {cap}"),
    ];
    emit(out, &report.to_text())?;
    if let Some(d) = &report.disagreement {
        let _ = writeln!(err, "disagreement at instance {}: {:?}", d.id, d.verdicts);
        return Ok(ExitStatus::Inconsistency);
    }
    Ok(ExitStatus::Success)
}
