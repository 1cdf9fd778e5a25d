//! Command-line front end: every subcommand reads JSON files, emits a
//! single JSON document on stdout, and signals its outcome in the exit
//! code (0 ok/flattenable, 1 not flattenable, 2 unknown, 64 usage,
//! 65 bad data, 70 internal).

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use flatnorm::decider::{decide_with_budget, explain, Status};
use flatnorm::edm::{certificate, edm_realize, is_edm, ExactSymmetricMatrix};
use flatnorm::graph::{Graph, Pattern};
use flatnorm::minor::{has_minor_with_budget, is_k4_minor_free, DEFAULT_NODE_BUDGET};
use flatnorm::rigidity::{forest_partition, is_independent_numeric};
use flatnorm::solver::{p_sweep, solve_realization, SolveConfig};
use flatnorm::space::{frechet_embed, norlander_range, EdgeLengths, Exponent, SpaceDescriptor};

const SCHEMA_VERSION: u32 = 1;

const EXIT_NOT_FLATTENABLE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(name = "flatnorm", version, about = "Flattenability of graphs between lp spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minor containment queries.
    Minor(MinorArgs),
    /// Decide (X, Y)-flattenability of a graph.
    Decide(DecideArgs),
    /// Explain a flattenability verdict in prose.
    Explain(DecideArgs),
    /// Randomized rigidity-matroid independence test.
    Independent(IndependentArgs),
    /// Partition the edge set into d forests, if possible.
    Forests(ForestsArgs),
    /// Euclidean distance matrix checks and certificates.
    #[command(subcommand)]
    Edm(EdmCommand),
    /// Exact embedding of a finite metric into linf^n.
    EmbedFrechet(MatrixArg),
    /// Sample the chord/sum range on an lp unit circle.
    Norlander(NorlanderArgs),
    /// Search for a realization with prescribed edge lengths.
    Solve(SolveArgs),
    /// Flatten residuals across a grid of source exponents.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct MinorArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Pattern graph to search for (K3, K4, W4, K4eK4, K222, Kn, Cn).
    #[arg(long, conflicts_with = "k4_free")]
    pattern: Option<String>,
    /// Run the series-parallel K4-minor-freeness test instead.
    #[arg(long)]
    k4_free: bool,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct DecideArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long = "X")]
    x: String,
    #[arg(long = "Y")]
    y: String,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct IndependentArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    space: String,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct ForestsArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    d: usize,
}

#[derive(Subcommand)]
enum EdmCommand {
    /// Exact Schoenberg test: is the matrix a Euclidean distance matrix?
    Check(MatrixArg),
    /// Recover a point set from a distance matrix.
    Realize(RealizeArgs),
    /// Print a shipped certificate (W4 or K4eK4).
    Certificate { name: String },
}

#[derive(Args)]
struct MatrixArg {
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Args)]
struct RealizeArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct NorlanderArgs {
    #[arg(long)]
    p: String,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 512)]
    samples: usize,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    space: String,
    /// JSON file of [[u, v, length], ...] triples.
    #[arg(long)]
    lengths: PathBuf,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 3000)]
    max_iters: usize,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long = "X")]
    x: String,
    /// Comma-separated exponents, e.g. "1,1.5,2,inf".
    #[arg(long)]
    grid: String,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

/// Error carrying the exit code it should produce.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn data(e: impl Display) -> Failure {
        Failure {
            code: EXIT_DATA,
            message: e.to_string(),
        }
    }

    fn usage(e: impl Display) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }

    fn internal(e: impl Display) -> Failure {
        Failure {
            code: EXIT_INTERNAL,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(doc: serde_json::Value) -> Result<(), Failure> {
    use std::io::Write;
    let mut doc = doc;
    doc["schema_version"] = json!(SCHEMA_VERSION);
    let text = serde_json::to_string_pretty(&doc).map_err(Failure::internal)?;
    // tolerate a closed pipe (e.g. piping into head)
    match writeln!(std::io::stdout(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::internal(e)),
        _ => Ok(()),
    }
}

fn load<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn parse_space(s: &str) -> Result<SpaceDescriptor, Failure> {
    SpaceDescriptor::from_str(s).map_err(Failure::usage)
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Minor(args) => {
            let g: Graph = load(&args.graph)?;
            if args.k4_free {
                emit(json!({ "k4_minor_free": is_k4_minor_free(&g) }))?;
                return Ok(0);
            }
            let Some(name) = args.pattern else {
                return Err(Failure::usage("pass either --pattern or --k4-free"));
            };
            let pattern = Pattern::from_str(&name).map_err(Failure::usage)?;
            let found = has_minor_with_budget(&g, &pattern.build(), args.budget)
                .map_err(Failure::internal)?;
            emit(json!({
                "pattern": pattern.to_string(),
                "has_minor": found.is_some(),
                "model": found,
            }))?;
            Ok(0)
        }
        Command::Decide(args) => {
            let g: Graph = load(&args.graph)?;
            let x = parse_space(&args.x)?;
            let y = parse_space(&args.y)?;
            let verdict = decide_with_budget(&g, x, y, args.budget);
            emit(json!({ "verdict": verdict }))?;
            Ok(match verdict.status {
                Status::Flattenable => 0,
                Status::NotFlattenable => EXIT_NOT_FLATTENABLE,
                Status::Unknown => EXIT_UNKNOWN,
            })
        }
        Command::Explain(args) => {
            let g: Graph = load(&args.graph)?;
            let x = parse_space(&args.x)?;
            let y = parse_space(&args.y)?;
            let verdict = decide_with_budget(&g, x, y, args.budget);
            emit(json!({
                "verdict": verdict,
                "explanation": explain(&verdict),
            }))?;
            Ok(match verdict.status {
                Status::Flattenable => 0,
                Status::NotFlattenable => EXIT_NOT_FLATTENABLE,
                Status::Unknown => EXIT_UNKNOWN,
            })
        }
        Command::Independent(args) => {
            let g: Graph = load(&args.graph)?;
            let space = parse_space(&args.space)?;
            let report = is_independent_numeric(&g, &space, args.trials, args.seed)
                .map_err(Failure::usage)?;
            emit(json!({
                "independent": report.independent,
                "certified": report.independent,
                "trials": report.trials,
                "witness": report.witness,
            }))?;
            Ok(0)
        }
        Command::Forests(args) => {
            let g: Graph = load(&args.graph)?;
            if args.d == 0 {
                return Err(Failure::usage("--d must be at least 1"));
            }
            let partition = forest_partition(&g, args.d);
            emit(json!({
                "d": args.d,
                "partitionable": partition.is_some(),
                "forests": partition,
            }))?;
            Ok(0)
        }
        Command::Edm(EdmCommand::Check(args)) => {
            let m: ExactSymmetricMatrix = load(&args.matrix)?;
            let edm = is_edm(&m).map_err(Failure::data)?;
            emit(json!({ "is_edm": edm }))?;
            Ok(0)
        }
        Command::Edm(EdmCommand::Realize(args)) => {
            let m: ExactSymmetricMatrix = load(&args.matrix)?;
            let r = edm_realize(&m, args.tol).map_err(Failure::data)?;
            emit(json!({ "dim": r.dim(), "realization": r }))?;
            Ok(0)
        }
        Command::Edm(EdmCommand::Certificate { name }) => {
            let cert = certificate(&name).map_err(Failure::usage)?;
            emit(json!({ "certificate": cert }))?;
            Ok(0)
        }
        Command::EmbedFrechet(args) => {
            let m: ExactSymmetricMatrix = load(&args.matrix)?;
            let emb = frechet_embed(&m).map_err(Failure::data)?;
            let rows: Vec<Vec<String>> = emb
                .points()
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect();
            emit(json!({
                "dim": m.order(),
                "points_exact": rows,
                "realization": emb.to_realization(),
            }))?;
            Ok(0)
        }
        Command::Norlander(args) => {
            let p = Exponent::from_str(&args.p).map_err(Failure::usage)?;
            let (lo, hi) =
                norlander_range(p, args.eps, args.samples).map_err(Failure::usage)?;
            emit(json!({
                "p": p.to_string(),
                "eps": args.eps,
                "samples": args.samples,
                "lo": lo,
                "hi": hi,
                "euclidean_value": (4.0 - args.eps * args.eps).sqrt(),
            }))?;
            Ok(0)
        }
        Command::Solve(args) => {
            let g: Graph = load(&args.graph)?;
            let space = parse_space(&args.space)?;
            let target: EdgeLengths = load(&args.lengths)?;
            let cfg = SolveConfig {
                restarts: args.restarts,
                max_iters: args.max_iters,
                seed: args.seed,
                ..SolveConfig::default()
            };
            let (r, res) = solve_realization(&g, &space, &target, &cfg)
                .map_err(Failure::usage)?;
            emit(json!({
                "residual": res,
                "realization": r,
                "note": "small residual is evidence of realizability, not proof",
            }))?;
            Ok(0)
        }
        Command::Sweep(args) => {
            let g: Graph = load(&args.graph)?;
            let x = parse_space(&args.x)?;
            let grid: Vec<Exponent> = args
                .grid
                .split(',')
                .map(|s| Exponent::from_str(s.trim()).map_err(Failure::usage))
                .collect::<Result<_, _>>()?;
            let cfg = SolveConfig {
                restarts: args.restarts,
                seed: args.seed,
                ..SolveConfig::default()
            };
            let rows = p_sweep(&g, &x, &grid, &cfg).map_err(Failure::usage)?;
            let table: Vec<serde_json::Value> = rows
                .iter()
                .map(|(p, res)| json!({ "p": p.to_string(), "worst_residual": res }))
                .collect();
            emit(json!({
                "x": x.to_string(),
                "sweep": table,
                "note": "residuals are empirical evidence, not proof",
            }))?;
            Ok(0)
        }
    }
}
