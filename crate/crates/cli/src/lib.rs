//! The `bimean` command line: file formats and subcommands.

pub mod format;

use std::io::{self, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bimean_core::matching::UndirectedGraph;
use bimean_core::oracles::{
    brute_force_min_mean, brute_force_min_mean_node_simple, karp_min_mean, KarpResult, OracleError,
    OracleResult, DEFAULT_MAX_EDGES,
};
use bimean_core::random::random_bidirected;
use bimean_core::reductions::{
    directed_to_bidirected, split_for_node_simple, undirected_to_bidirected, Digraph,
};
use bimean_core::skew::{
    skew_to_bidirected, tau_inverse_cycle, validate_skew, ConvertError, NodePartition,
    SkewSymmetricGraph, WeightPolicy,
};
use bimean_core::{
    decompose_balanced, solve_min_mean_cycle, BidirectedGraph, Rational, Sign, Solution, SolveError,
};

use format::{parse_bigraph, parse_skew, parse_undirected, serialize_bigraph, violation_arc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_CYCLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_OVERFLOW: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "bimean", version, about = "Exact minimum mean cycles in bidirected graphs")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a bigraph or skewgraph file.
    Validate { file: String },
    /// Find a minimum mean cycle.
    Solve {
        file: String,
        /// Minimize over node-simple cycles instead of edge-simple ones.
        #[arg(long, conflicts_with_all = ["skew", "from"])]
        node_simple: bool,
        /// Input is a skewgraph file; minimize over regular cycles.
        #[arg(long, conflicts_with = "from")]
        skew: bool,
        /// Print one line per shift iteration.
        #[arg(long)]
        trace: bool,
        /// Read the bigraph file as a directed or undirected graph.
        #[arg(long, value_enum)]
        from: Option<InputKind>,
    },
    /// Rewrite an input as a bigraph file.
    Convert {
        file: String,
        #[arg(long, value_enum)]
        from: ConvertKind,
        #[arg(long, value_enum)]
        to: OutputKind,
    },
    /// Split a balanced edge set into small cycles.
    Decompose {
        file: String,
        /// Edge ids of the set.
        ids: Vec<usize>,
    },
    /// Independent reference solvers.
    Oracle {
        #[command(subcommand)]
        oracle: OracleCommand,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Exhaustive enumeration of edge-simple cycles.
    Brute {
        file: String,
        #[arg(long, default_value_t = DEFAULT_MAX_EDGES)]
        max_edges: usize,
        #[arg(long)]
        node_simple: bool,
    },
    /// Karp's dynamic program; every edge must be `o i`.
    Karp { file: String },
    /// Compare the solver with enumeration on random instances.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum InputKind {
    Directed,
    Undirected,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ConvertKind {
    Directed,
    Undirected,
    Skew,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OutputKind {
    Bigraph,
}

/// A failed command: exit code and message for standard error.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Overflow => Failure { code: EXIT_OVERFLOW, message: e.to_string() },
            SolveError::Internal(_) => Failure::input(e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::Budget(_) => EXIT_BUDGET,
            OracleError::Overflow => EXIT_OVERFLOW,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs one command line (including the program name) and returns the
/// process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {path}: {e}")))?;
    }
    Ok(text)
}

fn load_bigraph(path: &str) -> Result<BidirectedGraph, Failure> {
    parse_bigraph(&read_input(path)?).map_err(|e| Failure::input(e.to_string()))
}

fn load_skew(path: &str) -> Result<SkewSymmetricGraph, Failure> {
    parse_skew(&read_input(path)?).map_err(|e| Failure::input(e.to_string()))
}

/// Reads a bigraph file whose edges must all be `o i`.
fn load_directed(path: &str) -> Result<Digraph, Failure> {
    let g = load_bigraph(path)?;
    let mut arcs = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        if e.signs != [Sign::Out, Sign::In] {
            return Err(Failure::input(format!("edge e{} is not directed `o i`", e.id)));
        }
        arcs.push((e.ends[0], e.ends[1], e.weight));
    }
    Ok(Digraph::new(g.node_count(), arcs))
}

/// Reads a bigraph file as an undirected multigraph, ignoring directions.
fn load_undirected(path: &str) -> Result<UndirectedGraph, Failure> {
    parse_undirected(&read_input(path)?).map_err(|e| Failure::input(e.to_string()))
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { file } => validate(&file, out),
        Command::Solve { file, node_simple, skew, trace, from } => {
            solve(&file, node_simple, skew, trace, from, out)
        }
        Command::Convert { file, from, to: OutputKind::Bigraph } => convert(&file, from, out, err),
        Command::Decompose { file, ids } => decompose(&file, &ids, out),
        Command::Oracle { oracle } => match oracle {
            OracleCommand::Brute { file, max_edges, node_simple } => {
                brute(&file, max_edges, node_simple, out)
            }
            OracleCommand::Karp { file } => karp(&file, out),
            OracleCommand::Fuzz { seed, count } => fuzz(seed, count, out),
        },
    }
}

fn validate(path: &str, out: &mut dyn Write) -> Outcome {
    let text = read_input(path)?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("skewgraph") {
        let g = parse_skew(&text).map_err(|e| Failure::input(e.to_string()))?;
        if let Err(v) = validate_skew(g.node_count(), g.node_mates(), g.arcs()) {
            let first = &v[0];
            let line = violation_arc(first).map_or(String::new(), |a| format!("arc a{a}: "));
            return Err(Failure::input(format!("{line}{first}")));
        }
        writeln!(out, "ok skewgraph {} {}", g.node_count(), g.arcs().len())?;
    } else {
        let g = parse_bigraph(&text).map_err(|e| Failure::input(e.to_string()))?;
        writeln!(out, "ok bigraph {} {}", g.node_count(), g.edge_count())?;
    }
    Ok(EXIT_OK)
}

/// What a solve run reports, already mapped back to the input's terms.
struct Report {
    mean: Rational,
    length: usize,
    cycle: String,
}

fn write_report(out: &mut dyn Write, r: &Report, iterations: Option<usize>) -> io::Result<()> {
    writeln!(out, "status optimal")?;
    writeln!(out, "mean {}", r.mean)?;
    writeln!(out, "length {}", r.length)?;
    writeln!(out, "cycle {}", r.cycle)?;
    if let Some(k) = iterations {
        writeln!(out, "iterations {k}")?;
    }
    writeln!(out, "decimal {}", r.mean.to_decimal(6))
}

fn write_trace(out: &mut dyn Write, s: &Solution) -> io::Result<()> {
    for (i, r) in s.trace().iter().enumerate() {
        writeln!(
            out,
            "trace {} shift {} size {} shifted {} step {}",
            i + 1,
            r.shift,
            r.size,
            r.shifted_weight,
            r.b
        )?;
    }
    Ok(())
}

fn double(r: Rational) -> Result<Rational, Failure> {
    r.checked_mul(Rational::from_int(2)).map_err(|_| SolveError::Overflow.into())
}

fn solve(
    path: &str,
    node_simple: bool,
    skew: bool,
    trace: bool,
    from: Option<InputKind>,
    out: &mut dyn Write,
) -> Outcome {
    let (solution, report): (Solution, Option<Report>) = if skew {
        let sg = load_skew(path)?;
        let corr =
            skew_to_bidirected(&sg, &NodePartition::canonical(&sg), WeightPolicy::RequireSymmetric)
                .map_err(|e| Failure::input(e.to_string()))?;
        let s = solve_min_mean_cycle(&corr.bidirected)?;
        let report = match s.cycle() {
            None => None,
            Some(c) => {
                let arcs = tau_inverse_cycle(&sg, &corr, c)
                    .map_err(|e| SolveError::Internal(e.to_string()))?;
                let mut text = format!("{}", sg.arc(arcs[0]).tail + 1);
                for &a in &arcs {
                    text.push_str(&format!(" a{} {}", a, sg.arc(a).head + 1));
                }
                Some(Report { mean: s.mean().expect("optimal"), length: arcs.len(), cycle: text })
            }
        };
        (s, report)
    } else if from == Some(InputKind::Undirected) {
        let u = load_undirected(path)?;
        let (bg, back) = undirected_to_bidirected(&u).map_err(|e| Failure::input(e.to_string()))?;
        let s = solve_min_mean_cycle(&bg)?;
        let report = match s.cycle() {
            None => None,
            Some(c) => {
                let circuit = back.circuit(&bg, c);
                let mut text = format!("{}", circuit.nodes[0] + 1);
                for (i, &e) in circuit.edges.iter().enumerate() {
                    let next = circuit.nodes[(i + 1) % circuit.nodes.len()];
                    text.push_str(&format!(" e{} {}", e, next + 1));
                }
                Some(Report {
                    mean: double(s.mean().expect("optimal"))?,
                    length: circuit.edges.len(),
                    cycle: text,
                })
            }
        };
        (s, report)
    } else {
        let bg = match from {
            Some(InputKind::Directed) => directed_to_bidirected(&load_directed(path)?)
                .map_err(|e| Failure::input(e.to_string()))?,
            _ => load_bigraph(path)?,
        };
        if node_simple {
            let (split, back) = split_for_node_simple(&bg);
            let s = solve_min_mean_cycle(&split)?;
            let report = match s.cycle() {
                None => None,
                Some(c) => {
                    let orig =
                        back.cycle(&bg, c).map_err(|e| SolveError::Internal(e.to_string()))?;
                    Some(Report {
                        mean: double(s.mean().expect("optimal"))?,
                        length: orig.len(),
                        cycle: orig.canonical(&bg).render(&bg),
                    })
                }
            };
            (s, report)
        } else {
            let s = solve_min_mean_cycle(&bg)?;
            let report = s.cycle().map(|c| Report {
                mean: s.mean().expect("optimal"),
                length: c.len(),
                cycle: c.render(&bg),
            });
            (s, report)
        }
    };
    if trace {
        write_trace(out, &solution)?;
    }
    match report {
        Some(r) => {
            write_report(out, &r, Some(solution.trace().len()))?;
            Ok(EXIT_OK)
        }
        None => {
            writeln!(out, "status no-cycle")?;
            writeln!(out, "iterations {}", solution.trace().len())?;
            Ok(EXIT_NO_CYCLE)
        }
    }
}

fn convert(path: &str, from: ConvertKind, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let bg = match from {
        ConvertKind::Directed => directed_to_bidirected(&load_directed(path)?)
            .map_err(|e| Failure::input(e.to_string()))?,
        ConvertKind::Undirected => {
            undirected_to_bidirected(&load_undirected(path)?)
                .map_err(|e| Failure::input(e.to_string()))?
                .0
        }
        ConvertKind::Skew => {
            let sg = load_skew(path)?;
            for a in sg.asymmetric_arcs() {
                writeln!(
                    err,
                    "warning: arc a{a} and its mate a{} differ in weight; keeping {}",
                    sg.arc(a).mate,
                    sg.arc(a).weight
                )?;
            }
            skew_to_bidirected(&sg, &NodePartition::canonical(&sg), WeightPolicy::UseLowerArc)
                .map_err(|e: ConvertError| Failure::input(e.to_string()))?
                .bidirected
        }
    };
    out.write_all(serialize_bigraph(&bg).as_bytes())?;
    Ok(EXIT_OK)
}

fn decompose(path: &str, ids: &[usize], out: &mut dyn Write) -> Outcome {
    let bg = load_bigraph(path)?;
    let cycles = decompose_balanced(&bg, ids).map_err(|e| Failure::input(e.to_string()))?;
    writeln!(out, "cycles {}", cycles.len())?;
    for c in &cycles {
        writeln!(out, "cycle {}", c.render(&bg))?;
    }
    Ok(EXIT_OK)
}

fn brute(path: &str, max_edges: usize, node_simple: bool, out: &mut dyn Write) -> Outcome {
    let bg = load_bigraph(path)?;
    let r = if node_simple {
        brute_force_min_mean_node_simple(&bg, max_edges)?
    } else {
        brute_force_min_mean(&bg, max_edges)?
    };
    match r {
        OracleResult::Optimal { mean, cycle } => {
            let report = Report { mean, length: cycle.len(), cycle: cycle.render(&bg) };
            write_report(out, &report, None)?;
            Ok(EXIT_OK)
        }
        OracleResult::NoCycle => {
            writeln!(out, "status no-cycle")?;
            Ok(EXIT_NO_CYCLE)
        }
    }
}

fn karp(path: &str, out: &mut dyn Write) -> Outcome {
    let d = load_directed(path)?;
    match karp_min_mean(&d).map_err(|_| SolveError::Overflow)? {
        KarpResult::Optimal { mean, arcs } => {
            let mut text = format!("{}", d.arcs[arcs[0]].0 + 1);
            for &a in &arcs {
                text.push_str(&format!(" e{} {}", a, d.arcs[a].1 + 1));
            }
            write_report(out, &Report { mean, length: arcs.len(), cycle: text }, None)?;
            Ok(EXIT_OK)
        }
        KarpResult::NoCycle => {
            writeln!(out, "status no-cycle")?;
            Ok(EXIT_NO_CYCLE)
        }
    }
}

fn fuzz(seed: u64, count: usize, out: &mut dyn Write) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0;
    for i in 0..count {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(0..=12);
        let g = random_bidirected(&mut rng, n, m, (-5, 5));
        let expected = brute_force_min_mean(&g, DEFAULT_MAX_EDGES)?.mean();
        let got = solve_min_mean_cycle(&g)?.mean();
        if expected != got {
            mismatches += 1;
            writeln!(out, "mismatch at instance {i}: solver {got:?}, brute force {expected:?}")?;
            out.write_all(serialize_bigraph(&g).as_bytes())?;
        }
    }
    writeln!(out, "fuzz seed {seed} instances {count} mismatches {mismatches}")?;
    Ok(if mismatches == 0 { EXIT_OK } else { EXIT_MISMATCH })
}
