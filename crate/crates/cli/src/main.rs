mod input;

use clap::{Args, Parser, Subcommand, ValueEnum};
use distchroma::bounds::{evaluate_bounds, scan_graph, BoundOptions, BoundsError, ExactChi};
use distchroma::coloring::{
    chi_gamma, chi_gamma_cycle, chi_gamma_path, dsatur_coloring, save_color_strategy, ExactOptions,
    SolveError,
};
use distchroma::corpus::{run_jsonl, RunnerOptions};
use distchroma::enumerate::connected_graphs_up_to;
use distchroma::formats::encode_graph6;
use distchroma::generators::{cycle, path};
use distchroma::metrics::{power_graph, InvariantReport};
use distchroma::spectral::{
    check_power_matrix_inequalities, check_spectral_power_bounds, comparison_tolerance,
    spectral_radius, DEFAULT_TOLERANCE,
};
use distchroma::Graph;
use input::{load, Item};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Duration;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Corpus(#[from] distchroma::corpus::CorpusError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Parser, Debug)]
#[command(name = "distchroma", version, about = "Distance chromatic numbers and their upper bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
enum Command {
    /// Structural invariants of each input graph.
    Invariants(GraphArgs),
    /// The power graph G^gamma, as graph6.
    Power(GraphArgs),
    /// Colour G^gamma: DSATUR by default, exactly with --exact.
    Color(ColorArgs),
    /// Spectral radius and the spectral and matrix inequalities.
    Spectral(SpectralArgs),
    /// Every upper bound on chi(G^gamma) against the exact value.
    Bounds(GraphArgs),
    /// Search for graphs needing M or more colours.
    Scan(GraphArgs),
    /// Closed-form values for paths and cycles.
    Formulas(FormulaArgs),
    /// All connected graphs up to a given order, as canonical graph6.
    Enumerate(EnumerateArgs),
}

#[derive(Args, Debug, Serialize)]
struct GraphArgs {
    /// graph6 file, edge-list file (with --edge-list), or a named graph
    /// such as `petersen`, `cycle:7`, `random-regular:n=20,d=3,seed=42`.
    #[arg(long)]
    input: String,
    /// Read the input file as a whitespace-separated edge list.
    #[arg(long)]
    edge_list: bool,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    gamma: u64,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Serialize)]
struct SolverArgs {
    /// Largest order handed to the exact solver (overrides DISTCHROMA_CAP_N).
    #[arg(long)]
    cap: Option<usize>,
    /// Exact-solver time limit per graph, in milliseconds.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    timeout_ms: Option<u64>,
    /// Exact-solver search-node limit per decision.
    #[arg(long)]
    node_budget: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
struct OutputArgs {
    /// Output file; JSON-lines output to a file resumes where it stopped.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Exit 1 when any graph was skipped for hitting a cap or time limit.
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Debug, Serialize)]
struct ColorArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Compute the exact chromatic number with a witness.
    #[arg(long)]
    exact: bool,
    /// Also run the constructive M-1 colouring strategy.
    #[arg(long)]
    strategy: bool,
}

#[derive(Args, Debug, Serialize)]
struct SpectralArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Residual tolerance for the power iteration.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
}

#[derive(Args, Debug, Serialize)]
struct FormulaArgs {
    /// Path on N vertices.
    #[arg(long, conflicts_with = "cycle", required_unless_present = "cycle")]
    path: Option<usize>,
    /// Cycle on N vertices.
    #[arg(long)]
    cycle: Option<usize>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    gamma: u64,
    /// Compare against the exact solver.
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug, Serialize)]
struct EnumerateArgs {
    #[arg(long, default_value_t = 1)]
    min_n: usize,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10))]
    max_n: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Format {
    /// One JSON object holding the header and all records.
    Json,
    /// Header line, then one record per line.
    Jsonl,
    /// Projection of bound reports; bounds only.
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Ok,
    /// Below the degree threshold of the statement checked.
    Excluded,
    /// Exact value unknown at the configured caps.
    Skipped,
    /// A graph needing `M` or more colours, or with `G^gamma = K_M`.
    Candidate,
    /// A proven upper bound or inequality failed.
    Violation,
    Error,
}

#[derive(Debug, Serialize)]
struct Record {
    id: String,
    status: Status,
    #[serde(skip_serializing_if = "Value::is_null")]
    report: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl Record {
    fn ok(id: &str, status: Status, report: impl Serialize) -> Record {
        Record {
            id: id.to_string(),
            status,
            report: serde_json::to_value(report).expect("reports serialize"),
            error: None,
        }
    }

    fn err(id: &str, status: Status, error: impl ToString) -> Record {
        Record {
            id: id.to_string(),
            status,
            report: Value::Null,
            error: Some(error.to_string()),
        }
    }
}

fn exact_options(s: &SolverArgs) -> ExactOptions {
    let mut opts = ExactOptions::from_env();
    if let Some(cap) = s.cap {
        opts.max_vertices = cap;
    }
    opts.timeout = s.timeout_ms.map(Duration::from_millis);
    opts.node_budget = s.node_budget;
    opts
}

fn solve_status(e: &SolveError) -> Status {
    match e {
        SolveError::CapExceeded { .. } | SolveError::Timeout { .. } | SolveError::BudgetExhausted { .. } => {
            Status::Skipped
        }
        SolveError::Disconnected | SolveError::InvalidGamma(_) => Status::Error,
    }
}

fn bounds_status(e: &BoundsError) -> Status {
    match e {
        BoundsError::DegreeTooSmall(_) => Status::Excluded,
        _ => Status::Error,
    }
}

fn header(command: &Command) -> Value {
    json!({
        "tool": "distchroma",
        "version": env!("CARGO_PKG_VERSION"),
        "config": command,
    })
}

fn record_for(command: &Command, item: &Item) -> Record {
    let (id, g) = (item.id.as_str(), &item.graph);
    match command {
        Command::Invariants(_) => Record::ok(id, Status::Ok, InvariantReport::compute(g)),
        Command::Power(a) => {
            let pg = power_graph(g, a.gamma as usize).expect("gamma >= 1");
            let p = pg.graph();
            Record::ok(
                id,
                Status::Ok,
                json!({"gamma": a.gamma, "n": p.order(), "m": p.size(), "max_degree": p.max_degree(), "graph6": encode_graph6(p)}),
            )
        }
        Command::Color(a) => color_record(a, id, g),
        Command::Spectral(a) => spectral_record(a, id, g),
        Command::Bounds(a) => {
            let opts = BoundOptions {
                exact: exact_options(&a.solver),
                ..Default::default()
            };
            match evaluate_bounds(g, a.gamma as usize, id, &opts) {
                Ok(r) => {
                    let status = if !r.is_sound() {
                        Status::Violation
                    } else if r.exact_chi.known().is_none() {
                        Status::Skipped
                    } else {
                        Status::Ok
                    };
                    Record::ok(id, status, r)
                }
                Err(e) => Record::err(id, bounds_status(&e), e),
            }
        }
        Command::Scan(a) => match scan_graph(id, g, a.gamma as usize, &exact_options(&a.solver)) {
            Ok(r) => {
                let above = match (&r.exact_chi, r.m) {
                    (ExactChi::Known(k), Some(m)) => *k as u64 > m + 1 || (*k as u64 == m + 1 && !r.is_moore),
                    _ => false,
                };
                let status = if r.low_degree {
                    Status::Excluded
                } else if above {
                    Status::Violation
                } else if r.certificate.is_some() {
                    Status::Candidate
                } else if r.skipped() {
                    Status::Skipped
                } else {
                    Status::Ok
                };
                Record::ok(id, status, r)
            }
            Err(e) => Record::err(id, bounds_status(&e), e),
        },
        Command::Formulas(_) | Command::Enumerate(_) => unreachable!("not a per-graph command"),
    }
}

fn color_record(a: &ColorArgs, id: &str, g: &Graph) -> Record {
    let gamma = a.graph.gamma as usize;
    let opts = exact_options(&a.graph.solver);
    let pg = power_graph(g, gamma).expect("gamma >= 1");
    let mut report = serde_json::Map::new();
    report.insert("gamma".into(), json!(gamma));
    let mut status = Status::Ok;
    if a.exact {
        match chi_gamma(g, gamma, &opts) {
            Ok((k, w)) => {
                if !w.is_proper_on(pg.graph()) {
                    return Record::err(id, Status::Error, "witness failed validation");
                }
                report.insert("chi".into(), json!(k));
                report.insert("exact".into(), json!(true));
                report.insert("witness".into(), json!(w));
            }
            Err(e) => return Record::err(id, solve_status(&e), e),
        }
    } else {
        let w = dsatur_coloring(pg.graph());
        report.insert("colors".into(), json!(w.num_colors()));
        report.insert("exact".into(), json!(false));
        report.insert("witness".into(), json!(w));
    }
    if a.strategy {
        match save_color_strategy(g, gamma, &opts) {
            Ok(out) => {
                report.insert("strategy".into(), json!(out));
            }
            Err(e) => {
                report.insert("strategy".into(), json!({"error": e.to_string()}));
                status = Status::Excluded;
            }
        }
    }
    Record::ok(id, status, report)
}

fn spectral_record(a: &SpectralArgs, id: &str, g: &Graph) -> Record {
    let radius = match spectral_radius(g, a.tolerance) {
        Ok(r) => r,
        Err(e) => return Record::err(id, Status::Error, e),
    };
    let gamma = a.graph.gamma as usize;
    let mut report = json!({"spectral_radius": radius});
    let mut status = Status::Ok;
    if g.order() >= 3 && gamma >= 2 {
        let tol = comparison_tolerance(g.order());
        match (check_spectral_power_bounds(g, gamma, tol), check_power_matrix_inequalities(g, gamma)) {
            (Ok(p), Ok(m)) => {
                if !p.square_bound_holds || !m.all_hold() {
                    status = Status::Violation;
                }
                report["power_bounds"] = json!(p);
                report["matrix_inequalities"] = json!(m);
            }
            (Err(e), _) | (_, Err(e)) => return Record::err(id, Status::Error, e),
        }
    }
    Record::ok(id, status, report)
}

fn graph_args(command: &Command) -> &GraphArgs {
    match command {
        Command::Invariants(a) | Command::Power(a) | Command::Bounds(a) | Command::Scan(a) => a,
        Command::Color(a) => &a.graph,
        Command::Spectral(a) => &a.graph,
        Command::Formulas(_) | Command::Enumerate(_) => unreachable!("not a per-graph command"),
    }
}

type StatusCounts = BTreeMap<Status, usize>;

fn count(records: impl IntoIterator<Item = Status>) -> StatusCounts {
    let mut counts = StatusCounts::new();
    for s in records {
        *counts.entry(s).or_default() += 1;
    }
    counts
}

fn status_of_line(line: &str) -> Option<Status> {
    let v: Value = serde_json::from_str(line).ok()?;
    let s = serde_json::from_value::<String>(v.get("status")?.clone()).ok()?;
    Some(match s.as_str() {
        "ok" => Status::Ok,
        "excluded" => Status::Excluded,
        "skipped" => Status::Skipped,
        "candidate" => Status::Candidate,
        "violation" => Status::Violation,
        _ => Status::Error,
    })
}

fn run_per_graph(command: &Command, stop: &AtomicBool) -> Result<StatusCounts, CliError> {
    let args = graph_args(command);
    let items = load(&args.input, args.edge_list)?;
    let out = &args.output;
    let header = header(command);
    let jobs = out.jobs as usize;

    if out.format == Format::Jsonl {
        if let Some(path) = &out.output {
            let opts = RunnerOptions { jobs, chunk_size: 64 * jobs };
            let summary = run_jsonl(&items, path, &header, opts, stop, |_, item| record_for(command, item))?;
            if summary.interrupted {
                eprintln!("interrupted after {} of {} records", summary.resumed_from + summary.written, summary.total);
            }
            let file = std::io::BufReader::new(std::fs::File::open(path)?);
            let statuses: Vec<Status> = file.lines().skip(1).map_while(Result::ok).filter_map(|l| status_of_line(&l)).collect();
            return Ok(count(statuses));
        }
    }

    let pool = rayon_pool(jobs)?;
    let records: Vec<Record> = pool.install(|| {
        use rayon::prelude::*;
        items.par_iter().map(|item| record_for(command, item)).collect()
    });
    let counts = count(records.iter().map(|r| r.status));
    let mut sink: Box<dyn Write> = match &out.output {
        Some(p) => Box::new(io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    };
    match out.format {
        Format::Jsonl => {
            writeln!(sink, "{}", serde_json::to_string(&header)?)?;
            for r in &records {
                writeln!(sink, "{}", serde_json::to_string(r)?)?;
            }
        }
        Format::Json => {
            let mut doc = header;
            doc["results"] = serde_json::to_value(&records)?;
            writeln!(sink, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv => {
            if !matches!(command, Command::Bounds(_)) {
                return Err(CliError::Usage("--format csv is only available for `bounds`".into()));
            }
            write_csv(&mut sink, &records)?;
        }
    }
    sink.flush()?;
    Ok(counts)
}

fn rayon_pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn write_csv(sink: &mut dyn Write, records: &[Record]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["id", "n", "delta", "gamma", "M", "best_bound", "exact_chi", "equality_class"])?;
    for r in records {
        let rep = &r.report;
        let field = |k: &str| match rep.get(k) {
            Some(Value::String(s)) => s.clone(),
            Some(v) if v.is_number() => v.to_string(),
            _ => String::new(),
        };
        w.write_record([
            r.id.clone(),
            field("n"),
            field("delta"),
            field("gamma"),
            field("M"),
            field("best_bound"),
            field("exact_chi"),
            field("equality_class"),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn run_formulas(a: &FormulaArgs) -> Result<StatusCounts, CliError> {
    let gamma = a.gamma as usize;
    let (family, n, value, graph) = match (a.path, a.cycle) {
        (Some(n), None) if n >= 1 => ("path", n, chi_gamma_path(n, gamma), path(n)),
        (None, Some(n)) if n >= 3 => ("cycle", n, chi_gamma_cycle(n, gamma), cycle(n)),
        _ => return Err(CliError::Usage("need --path N (N >= 1) or --cycle N (N >= 3)".into())),
    };
    let mut out = json!({"family": family, "n": n, "gamma": gamma, "chi": value});
    let mut status = Status::Ok;
    if a.verify {
        let (exact, _) = chi_gamma(&graph, gamma, &ExactOptions::from_env())
            .map_err(|e| CliError::Input(e.to_string()))?;
        out["exact"] = json!(exact);
        if exact != value {
            status = Status::Violation;
        }
    }
    println!("{}", serde_json::to_string(&out)?);
    Ok(count([status]))
}

fn run_enumerate(a: &EnumerateArgs) -> Result<StatusCounts, CliError> {
    let levels = connected_graphs_up_to(a.max_n as usize);
    let mut sink: Box<dyn Write> = match &a.output {
        Some(p) => Box::new(io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    };
    let mut total = 0;
    for level in levels.iter().skip(a.min_n.saturating_sub(1)) {
        for g6 in level {
            writeln!(sink, "{g6}")?;
            total += 1;
        }
    }
    sink.flush()?;
    Ok(count(std::iter::repeat_n(Status::Ok, total)))
}

fn run(cli: &Cli, stop: &AtomicBool) -> Result<StatusCounts, CliError> {
    match &cli.command {
        Command::Formulas(a) => run_formulas(a),
        Command::Enumerate(a) => run_enumerate(a),
        other => run_per_graph(other, stop),
    }
}

fn strict(command: &Command) -> bool {
    match command {
        Command::Formulas(_) | Command::Enumerate(_) => false,
        other => graph_args(other).output.strict,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stop = Arc::new(AtomicBool::new(false));
    {
        let stop = Arc::clone(&stop);
        // a second interrupt terminates immediately
        let _ = ctrlc::set_handler(move || {
            if stop.swap(true, Ordering::SeqCst) {
                std::process::exit(130);
            }
        });
    }
    match run(&cli, &stop) {
        Ok(counts) => {
            if counts.len() > 1 || !counts.contains_key(&Status::Ok) {
                let summary: BTreeMap<String, usize> = counts
                    .iter()
                    .map(|(s, c)| (serde_json::to_value(s).unwrap().as_str().unwrap().to_string(), *c))
                    .collect();
                eprintln!("{}", serde_json::to_string(&summary).unwrap_or_default());
            }
            if counts.contains_key(&Status::Violation) {
                ExitCode::from(2)
            } else if counts.contains_key(&Status::Error)
                || (strict(&cli.command) && counts.contains_key(&Status::Skipped))
            {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
