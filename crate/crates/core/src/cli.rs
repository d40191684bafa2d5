//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage or input errors, 3 when a numerical
//! routine failed to converge.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::attack::{run_attack, AttackConfig, Scheme, DEFAULT_POWER};
use crate::bounds::{bound_curve_with, thresholds_with, DeadEndRule};
use crate::error::Error;
use crate::graph::{parse_edge_list, parse_json, to_edge_list, to_json, Grid, Indexing};
use crate::nonbacktracking::build_modified_graph;
use crate::simulate::{monte_carlo_with, LogBase, DEFAULT_TRIALS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

const DEFAULT_P0: &str = "0.05:0.95:0.05";
/// Slack allowed when deciding whether a sweep reaches its stop value.
const GRID_SLACK: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "gridvuln",
    version,
    about = "Spectral vulnerability analysis of power-grid graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report Perron roots and both fragmentation thresholds as JSON.
    Analyze(AnalyzeArgs),
    /// Failure-count upper bound over a sweep of p0.
    Bounds(BoundsArgs),
    /// Monte Carlo damage statistics over a sweep of p0.
    Simulate(SimulateArgs),
    /// Plan a line-removal attack; writes <output>.csv and <output>.json.
    Attack(AttackArgs),
    /// Convert between the edge-list and JSON graph formats.
    Convert(ConvertArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Graph file: whitespace edge list or JSON.
    #[arg(long)]
    input: PathBuf,
    /// Output path (or prefix for attack); stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemeArg {
    EigenIterative,
    EigenSingle,
    TraceGreedy,
    Random,
    Betweenness,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::EigenIterative => Scheme::EigenIterative,
            SchemeArg::EigenSingle => Scheme::EigenSingleShot,
            SchemeArg::TraceGreedy => Scheme::TraceGreedy,
            SchemeArg::Random => Scheme::Random,
            SchemeArg::Betweenness => Scheme::Betweenness,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LogBaseArg {
    #[value(name = "e")]
    E,
    #[value(name = "2")]
    Two,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DeadEndArg {
    Pinned,
    InitialOnly,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    EdgeList,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[command(flatten)]
    common: Common,
    /// start:stop:step (inclusive), a single value, or a comma list.
    #[arg(long, default_value = DEFAULT_P0)]
    p0: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Reading of lines into leaf nodes in the deficit recursion.
    #[arg(long, value_enum, default_value = "pinned")]
    dead_end_rule: DeadEndArg,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = DEFAULT_P0)]
    p0: String,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Logarithm base of the 2 log N fragmentation cutoff.
    #[arg(long, value_enum, default_value = "e")]
    log_base: LogBaseArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct AttackArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "eigen-iterative")]
    scheme: SchemeArg,
    /// Number of lines to remove.
    #[arg(short)]
    k: usize,
    /// Walk length 2r for trace-greedy.
    #[arg(long, default_value_t = DEFAULT_POWER)]
    power: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Re-score betweenness after every removal.
    #[arg(long)]
    recompute_betweenness: bool,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[command(flatten)]
    common: Common,
    /// Target format; defaults to the other one.
    #[arg(long, value_enum)]
    to: Option<GraphFormat>,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_USAGE
            },
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let threads = match &cli.command {
        Command::Analyze(a) => a.common.threads,
        Command::Bounds(a) => a.common.threads,
        Command::Simulate(a) => a.common.threads,
        Command::Attack(a) => a.common.threads,
        Command::Convert(a) => a.common.threads,
    };
    let result = match threads {
        Some(0) => Err(usage("--threads must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => Err(usage(format!("cannot start worker pool: {e}"))),
        },
        None => dispatch(cli.command),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Attack(a) => cmd_attack(a),
        Command::Convert(a) => cmd_convert(a),
    }
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn read_grid(path: &Path) -> std::result::Result<(Grid, GraphFormat), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let parsed = if looks_like_json(&text) {
        parse_json(&text).map(|g| (g, GraphFormat::Json))
    } else {
        parse_edge_list(&text, Indexing::Auto).map(|g| (g, GraphFormat::EdgeList))
    };
    parsed.map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Writes to a temporary file beside `path`, then renames it into place.
fn write_atomic(path: &Path, contents: &str) -> CmdResult {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| usage(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(contents.as_bytes()).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

fn emit(output: Option<&Path>, contents: &str) -> CmdResult {
    match output {
        Some(path) => write_atomic(path, contents),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| usage(format!("cannot write to stdout: {e}")))
        }
    }
}

fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Parses `start:stop:step`, a single value or a comma-separated list.
pub fn parse_p0_grid(spec: &str) -> crate::error::Result<Vec<f64>> {
    let bad = |what: &str| Error::Domain(format!("invalid p0 grid {spec:?}: {what}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let points = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [start, stop, step] = parts[..] else {
            return Err(bad("expected start:stop:step"));
        };
        let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
        if step.is_nan() || step <= 0.0 {
            return Err(bad("step must be positive"));
        }
        if start.is_nan() || stop.is_nan() || start > stop + GRID_SLACK {
            return Err(bad("start exceeds stop"));
        }
        let mut points = Vec::new();
        let mut i = 0u64;
        loop {
            let p = start + i as f64 * step;
            if p > stop + GRID_SLACK {
                break;
            }
            // Snap accumulated rounding so 0.1 * 3 prints as 0.3.
            points.push(((p * 1e12).round() / 1e12).min(stop.max(start)));
            i += 1;
        }
        points
    } else {
        spec.split(',')
            .map(num)
            .collect::<crate::error::Result<Vec<_>>>()?
    };
    crate::bounds::validate_p0_grid(&points)?;
    Ok(points)
}

#[derive(Serialize)]
struct AnalyzeReport {
    nodes: usize,
    edges: usize,
    beta_a: f64,
    beta_ae: f64,
    first_threshold: f64,
    second_threshold: f64,
    modified_nodes: usize,
    modified_arcs: usize,
}

fn cmd_analyze(a: AnalyzeArgs) -> CmdResult {
    let (grid, _) = read_grid(&a.common.input)?;
    let mg = build_modified_graph(&grid)?;
    let t = thresholds_with(&grid, &mg)?;
    let report = AnalyzeReport {
        nodes: grid.node_count(),
        edges: grid.edge_count(),
        beta_a: t.beta_a,
        beta_ae: t.beta_ae,
        first_threshold: t.first,
        second_threshold: t.second,
        modified_nodes: mg.node_count(),
        modified_arcs: mg.arc_count(),
    };
    emit(a.common.output.as_deref(), &to_pretty_json(&report))
}

fn cmd_bounds(a: BoundsArgs) -> CmdResult {
    let p0 = parse_p0_grid(&a.p0)?;
    let (grid, _) = read_grid(&a.common.input)?;
    let rule = match a.dead_end_rule {
        DeadEndArg::Pinned => DeadEndRule::Pinned,
        DeadEndArg::InitialOnly => DeadEndRule::InitialOnly,
    };
    let curve = bound_curve_with(&grid, &p0, rule)?;
    let text = match a.format {
        Format::Csv => curve.to_csv(),
        Format::Json => to_pretty_json(&curve),
    };
    emit(a.common.output.as_deref(), &text)
}

fn cmd_simulate(a: SimulateArgs) -> CmdResult {
    let p0 = parse_p0_grid(&a.p0)?;
    if a.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let (grid, _) = read_grid(&a.common.input)?;
    let base = match a.log_base {
        LogBaseArg::E => LogBase::E,
        LogBaseArg::Two => LogBase::Two,
    };
    let report = monte_carlo_with(&grid, &p0, a.trials, a.seed, base)?;
    let text = match a.format {
        Format::Csv => report.to_csv(),
        Format::Json => to_pretty_json(&report),
    };
    emit(a.common.output.as_deref(), &text)
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn cmd_attack(a: AttackArgs) -> CmdResult {
    let (grid, _) = read_grid(&a.common.input)?;
    if a.k == 0 {
        return Err(usage("-k must be at least 1"));
    }
    if a.k > grid.edge_count() {
        return Err(usage(format!(
            "-k {} exceeds the {} lines in the graph",
            a.k,
            grid.edge_count()
        )));
    }
    let config = AttackConfig {
        scheme: a.scheme.into(),
        k: a.k,
        power: a.power,
        seed: a.seed,
        recompute: a.recompute_betweenness,
    };
    let trace = run_attack(&grid, &config)?;
    match a.common.output.as_deref() {
        Some(prefix) => {
            write_atomic(&with_suffix(prefix, "csv"), &trace.to_csv())?;
            let mut json = trace.to_json();
            json.push('\n');
            write_atomic(&with_suffix(prefix, "json"), &json)
        }
        None => emit(None, &trace.to_csv()),
    }
}

fn cmd_convert(a: ConvertArgs) -> CmdResult {
    let (grid, from) = read_grid(&a.common.input)?;
    let to = a.to.unwrap_or(match from {
        GraphFormat::Json => GraphFormat::EdgeList,
        GraphFormat::EdgeList => GraphFormat::Json,
    });
    let text = match to {
        GraphFormat::Json => to_json(&grid),
        GraphFormat::EdgeList => to_edge_list(&grid),
    };
    emit(a.common.output.as_deref(), &text)
}
