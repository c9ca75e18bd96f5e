//! Command-line front end.
//!
//! One thin binary ties the library together: deciding inequality specs
//! (with optional JSON certificates), generating the balanced-colouring
//! inequality, counting colourings by any of the independent methods,
//! tabulating the valuation conjecture, checking the block-splitting
//! congruence, and inspecting carry-graph structure.
//!
//! The machine contract is deliberately small: exit code 0 for
//! proved/success/match, 1 for refuted/mismatch, 2 for any error; identical
//! invocations produce byte-identical output.

use std::error::Error;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::colourings::{
    count_bruteforce, count_dp, count_walks3d, domino_count, verify_conjecture, CountReport,
    Verdict,
};
use crate::congruence::check_lemma_ab;
use crate::graph::{
    build_graph, classify_arcs, decide, default_max_iter, surplus, Certificate, CarryGraph,
    Limits, ProofOutcome,
};
use crate::spec::{build_bm_spec, parse_spec, InequalitySpec};

#[derive(Debug, Parser)]
#[command(
    name = "carrygraph",
    version,
    about = "Decide binary digit-sum inequalities on carry graphs; count balanced grid colourings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide an inequality spec: a proof or an explicit counterexample
    Prove(ProveArgs),
    /// Print the balanced-colouring inequality for an odd grid width
    BmSpec(BmSpecArgs),
    /// Count balanced colourings of one grid and test the valuation
    Count(CountArgs),
    /// Tabulate counts against the predicted valuation over a rectangle
    Verify(VerifyArgs),
    /// Check the block-splitting congruence for one parameter tuple
    LemmaAb(LemmaAbArgs),
    /// Classify the arc surpluses of a spec's carry graph
    Surplus(SurplusArgs),
    /// Print size statistics of a spec's carry graph
    GraphStats(GraphStatsArgs),
}

#[derive(Debug, Args)]
struct ProveArgs {
    /// Inequality spec file
    spec: PathBuf,
    /// Iteration budget for the decision loop (default scales with the graph)
    #[arg(long, value_name = "N")]
    max_iter: Option<u64>,
    /// Cap on the number of variables the graph builder accepts
    #[arg(long, value_name = "N")]
    max_vars: Option<usize>,
    /// Write a JSON certificate of the outcome to this path
    #[arg(long, value_name = "PATH")]
    emit_cert: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BmSpecArgs {
    /// Half the grid width; odd, at least 3
    m: u64,
}

#[derive(Debug, Args)]
struct CountArgs {
    /// Rows come in 2n pairs of this half-width
    m: u64,
    /// Columns sum to this target
    n: u64,
    /// Counting method
    #[arg(long, value_enum, default_value_t = CountMethod::Dp, value_name = "NAME")]
    method: CountMethod,
    #[arg(long, value_enum, default_value_t = OutputFormat::Tsv)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Largest half-width to tabulate
    m_max: u64,
    /// Largest column target to tabulate
    n_max: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Tsv)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct LemmaAbArgs {
    /// Half the grid width
    m: u64,
    /// Residue window exponent: the congruence is taken modulo 2^(a+2)
    a: u32,
    /// Zero-gap width; the low part must sit below 2^b
    b: u32,
    /// High part of the split column target
    n_high: u64,
    /// Low part of the split column target
    n_low: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Tsv)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct SurplusArgs {
    /// Inequality spec file
    spec: PathBuf,
    /// Scored form to anchor the surplus at (default: the spec's anchor)
    #[arg(long, value_name = "NAME")]
    anchor: Option<String>,
    /// Cap on the number of variables the graph builder accepts
    #[arg(long, value_name = "N")]
    max_vars: Option<usize>,
}

#[derive(Debug, Args)]
struct GraphStatsArgs {
    /// Inequality spec file
    spec: PathBuf,
    /// Cap on the number of variables the graph builder accepts
    #[arg(long, value_name = "N")]
    max_vars: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Tsv)]
    format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountMethod {
    /// Column-by-column dynamic program (the reference counter)
    Dp,
    /// Exhaustive grid enumeration (small grids only)
    Brute,
    /// Row-type multiplicity sum
    Domino,
    /// Closed-walk formula (width 2 only)
    Walks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Tsv,
    Json,
}

/// Parses `args` and runs one subcommand, writing to the given streams.
/// Returns the process exit code: 0 proved/success, 1 refuted/mismatch,
/// 2 error.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return 2;
            }
            let _ = write!(out, "{rendered}");
            return 0;
        }
    };
    let result = match cli.command {
        Command::Prove(args) => cmd_prove(&args, out),
        Command::BmSpec(args) => cmd_bm_spec(&args, out),
        Command::Count(args) => cmd_count(&args, out),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::LemmaAb(args) => cmd_lemma_ab(&args, out),
        Command::Surplus(args) => cmd_surplus(&args, out),
        Command::GraphStats(args) => cmd_graph_stats(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// [`run_from`] against the real standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_from(args, &mut stdout.lock(), &mut stderr.lock())
}

type CmdResult = Result<i32, Box<dyn Error>>;

fn load_spec(path: &Path) -> Result<InequalitySpec, Box<dyn Error>> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(parse_spec(&text)?)
}

fn limits_with(max_vars: Option<usize>) -> Limits {
    let mut limits = Limits::default();
    if let Some(v) = max_vars {
        limits.max_vars = v;
    }
    limits
}

fn build(spec: &InequalitySpec, max_vars: Option<usize>) -> Result<CarryGraph, Box<dyn Error>> {
    Ok(build_graph(spec, &limits_with(max_vars))?)
}

fn cmd_prove(args: &ProveArgs, out: &mut dyn Write) -> CmdResult {
    let spec = load_spec(&args.spec)?;
    let graph = build(&spec, args.max_vars)?;
    let max_iter = args.max_iter.unwrap_or_else(|| default_max_iter(&graph));
    let outcome = decide(&spec, &graph, max_iter)?;
    let negative_arcs = match spec.anchor() {
        Some(a) => Some(classify_arcs(&graph, a)?.negative.len() as u64),
        None => None,
    };
    if let Some(path) = &args.emit_cert {
        let cert = Certificate::new(&outcome, &graph, negative_arcs);
        fs::write(path, cert.to_json())
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    match &outcome {
        ProofOutcome::Proved { iterations, states, arcs } => {
            writeln!(out, "PROVED states={states} arcs={arcs} iterations={iterations}")?;
            Ok(0)
        }
        ProofOutcome::Refuted { assignment, .. } => {
            let pairs: Vec<String> = spec
                .variables()
                .iter()
                .zip(assignment)
                .map(|(name, value)| format!("{name}={value}"))
                .collect();
            writeln!(out, "REFUTED {}", pairs.join(" "))?;
            Ok(1)
        }
    }
}

fn cmd_bm_spec(args: &BmSpecArgs, out: &mut dyn Write) -> CmdResult {
    let spec = build_bm_spec(args.m)?;
    write!(out, "{}", spec.render())?;
    Ok(0)
}

fn count_row(out: &mut dyn Write, format: OutputFormat, report: &CountReport) -> CmdResult {
    match format {
        OutputFormat::Tsv => writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            report.m, report.n, report.count, report.valuation, report.predicted, report.verdict
        )?,
        OutputFormat::Json => writeln!(out, "{}", count_json(report))?,
    }
    Ok(if report.verdict == Verdict::Match { 0 } else { 1 })
}

fn count_json(report: &CountReport) -> serde_json::Value {
    serde_json::json!({
        "m": report.m,
        "n": report.n,
        "count": report.count.to_string(),
        "v2": report.valuation,
        "predicted": report.predicted,
        "verdict": report.verdict.to_string(),
    })
}

fn cmd_count(args: &CountArgs, out: &mut dyn Write) -> CmdResult {
    let count = match args.method {
        CountMethod::Dp => count_dp(args.m, args.n)?,
        CountMethod::Brute => count_bruteforce(args.m, args.n)?,
        CountMethod::Domino => domino_count(args.m, args.n)?,
        CountMethod::Walks => {
            if args.m != 2 {
                return Err(format!(
                    "the closed-walk method only counts width-2 grids, got m = {}",
                    args.m
                )
                .into());
            }
            count_walks3d(args.n)?
        }
    };
    count_row(out, args.format, &CountReport::from_count(args.m, args.n, count))
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let mut reports = Vec::new();
    for cell in verify_conjecture(args.m_max, args.n_max) {
        reports.push(cell?);
    }
    let mut all_match = true;
    match args.format {
        OutputFormat::Tsv => {
            for report in &reports {
                all_match &= count_row(out, OutputFormat::Tsv, report)? == 0;
            }
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = reports.iter().map(count_json).collect();
            writeln!(out, "{}", serde_json::Value::Array(rows))?;
            all_match = reports.iter().all(|r| r.verdict == Verdict::Match);
        }
    }
    Ok(if all_match { 0 } else { 1 })
}

fn cmd_lemma_ab(args: &LemmaAbArgs, out: &mut dyn Write) -> CmdResult {
    let report = check_lemma_ab(args.m, args.a, args.b, args.n_high, args.n_low)?;
    match args.format {
        OutputFormat::Tsv => writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            report.n, report.modulus, report.lhs_residue, report.rhs_residue, report.holds
        )?,
        OutputFormat::Json => writeln!(
            out,
            "{}",
            serde_json::json!({
                "n": report.n,
                "modulus": report.modulus,
                "lhs": report.lhs_residue,
                "rhs": report.rhs_residue,
                "holds": report.holds,
            })
        )?,
    }
    Ok(if report.holds { 0 } else { 1 })
}

fn cmd_surplus(args: &SurplusArgs, out: &mut dyn Write) -> CmdResult {
    let spec = load_spec(&args.spec)?;
    let graph = build(&spec, args.max_vars)?;
    let anchor = match &args.anchor {
        Some(name) => spec
            .scored_form_by_name(name)
            .ok_or_else(|| format!("no scored form named `{name}`"))?,
        None => spec
            .anchor()
            .ok_or("the spec designates no anchor form; pass --anchor NAME")?,
    };
    let classification = classify_arcs(&graph, anchor)?;
    writeln!(
        out,
        "negative={} neutral={} positive={}",
        classification.negative.len(),
        classification.neutral,
        classification.positive
    )?;
    for &ai in &classification.negative {
        let arc = &graph.arcs()[ai];
        let input: String = arc.input.iter().map(|d| char::from(b'0' + d)).collect();
        writeln!(
            out,
            "arc {ai}: {} -> {} input={} score={} surplus={}",
            arc.from,
            arc.to,
            input,
            arc.score,
            surplus(&graph, arc, anchor)?
        )?;
    }
    Ok(0)
}

fn cmd_graph_stats(args: &GraphStatsArgs, out: &mut dyn Write) -> CmdResult {
    let spec = load_spec(&args.spec)?;
    let graph = build(&spec, args.max_vars)?;
    match args.format {
        OutputFormat::Tsv => writeln!(
            out,
            "states={} arcs={} variables={} scored_forms={} conditions={}",
            graph.state_count(),
            graph.arc_count(),
            graph.var_count(),
            graph.scored_count(),
            graph.condition_count()
        )?,
        OutputFormat::Json => writeln!(
            out,
            "{}",
            serde_json::json!({
                "states": graph.state_count(),
                "arcs": graph.arc_count(),
                "variables": graph.var_count(),
                "scored_forms": graph.scored_count(),
                "conditions": graph.condition_count(),
            })
        )?,
    }
    Ok(0)
}
