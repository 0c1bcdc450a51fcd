use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand};
use serde_json::{json, Value};

use longcycle::budget::Budget;
use longcycle::dsl::{resolve, Resolved};
use longcycle::error::Error;
use longcycle::fragments::enumerate_fragments;
use longcycle::graph6::write_graph6;
use longcycle::invariants::InvariantBundle;
use longcycle::path_systems::combined_cycles;
use longcycle::schemes::{
    min_host_bruteforce, scheme_bound, BoundLemma, HostKind, ORACLE_MAX_HOST,
};
use longcycle::search::{resume_scan, run_scan, scan_to_writer, Cursor, ScanConfig, Totals};
use longcycle::stream::StreamSpec;
use longcycle::theorems::{check_statement, StatementId, StatementReport, Status};

const EX_USAGE: u8 = 64;

/// Exact circumference, fragment and scheme computations for small graphs.
///
/// A GRAPH argument is a constructor (`petersen`, `K_n`, `C_n`, `P_n`,
/// `E_n`, `mK_a+K_k`, `H(a,b,t,k[;reading])`, `gnp(n,p,seed)`), a graph6
/// record, `@FILE` (first line of the file) or `-` (one line of stdin,
/// either graph6 or the JSON printed by `construct`).
#[derive(Parser, Debug)]
#[command(name = "longcycle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// n, delta, kappa, alpha, circumference and a longest cycle.
    Invariants {
        graph: String,
        #[arg(long)]
        budget_ms: Option<u64>,
    },
    /// Minimum cut-sets, fragments and endfragment flags.
    Fragments { graph: String },
    /// Path systems and combined cycles for one fragment of the catalog.
    Paths {
        graph: String,
        /// Index into the `fragments` list of the catalog.
        #[arg(long)]
        fragment: usize,
        #[arg(long)]
        budget_ms: Option<u64>,
    },
    /// Check one of the structural lemmas L12..L15.
    Lemma {
        lemma: StatementId,
        graph: String,
        #[arg(long)]
        budget_ms: Option<u64>,
    },
    /// Scheme lower bounds and the brute-force minimum host.
    Scheme {
        #[command(subcommand)]
        command: SchemeCommand,
    },
    /// Check one statement on one graph.
    Verify {
        statement: StatementId,
        graph: String,
        #[arg(long)]
        budget_ms: Option<u64>,
    },
    /// Check statements over a stream of graphs, one JSON row per line.
    Scan(ScanArgs),
    /// Build a graph and print its graph6 record.
    Construct { graph: String },
}

#[derive(Subcommand, Debug)]
enum SchemeCommand {
    /// Lower bound on the host length given by a lemma.
    Bound {
        lemma: BoundLemma,
        /// Comma-separated class sizes.
        sizes: String,
        r: usize,
        host: HostKind,
    },
    /// Shortest host carrying a nontrivial scheme, by exhaustive placement.
    Oracle {
        sizes: String,
        r: usize,
        host: HostKind,
        #[arg(long, default_value_t = ORACLE_MAX_HOST)]
        cap: usize,
    },
}

#[derive(clap::Args, Debug)]
struct ScanArgs {
    /// Statement id, comma-separated ids, or `all`.
    statements: Option<String>,
    /// Enumerate graphs on this many vertices.
    #[arg(long)]
    n: Option<usize>,
    /// Keep only connected graphs.
    #[arg(long)]
    connected: bool,
    /// Enumerate labelled graphs instead of one per isomorphism class.
    #[arg(long)]
    labelled: bool,
    /// Read graph6 records from a file instead of enumerating.
    #[arg(long)]
    graph6_file: Option<PathBuf>,
    /// JSON scan configuration; command-line flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write rows here (with a cursor sidecar) and print a summary instead.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Continue from the cursor sidecar of `--output`.
    #[arg(long, requires = "output")]
    resume: bool,
    #[arg(long)]
    budget_ms: Option<u64>,
    /// Worker threads; 0 uses one per core.
    #[arg(long)]
    workers: Option<usize>,
    /// Stop after this many graphs.
    #[arg(long)]
    limit: Option<u64>,
    /// Replace the seed of every random source.
    #[arg(long)]
    seed: Option<u64>,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Graph6 { .. }
            | Error::TooManyVertices { .. }
            | Error::VertexOutOfRange { .. }
            | Error::Loop(_)
            | Error::SameVertex(_)
            | Error::NotAnEdge(_)
            | Error::InvalidParameter(_)
            | Error::UnknownFamily(_)
            | Error::NotAScheme(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CliResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(EX_USAGE),
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n");
            eprintln!("{}", Cli::command().render_usage());
            ExitCode::from(EX_USAGE)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Invariants { graph, budget_ms } => {
            let g = load(&graph)?.graph;
            let bundle =
                InvariantBundle::compute_within(&g, &Budget::from_optional_millis(budget_ms))?;
            emit(&bundle)?;
            Ok(0)
        }
        Command::Fragments { graph } => {
            let g = load(&graph)?.graph;
            emit(&enumerate_fragments(&g)?)?;
            Ok(0)
        }
        Command::Paths {
            graph,
            fragment,
            budget_ms,
        } => {
            let g = load(&graph)?.graph;
            let catalog = enumerate_fragments(&g)?;
            let Some(frag) = catalog.fragments.get(fragment) else {
                return Err(Failure::Usage(format!(
                    "fragment index {fragment} out of range, catalog has {}",
                    catalog.fragments.len()
                )));
            };
            let cc = combined_cycles(&g, frag, &Budget::from_optional_millis(budget_ms))?;
            emit(&json!({
                "fragment_index": fragment,
                "endfragment": catalog.endfragment[fragment],
                "fragment": frag,
                "up": cc.up,
                "down": cc.down,
                "c_star": cc.c_star,
                "c_star_star": cc.c_star_star,
                "tied_systems": cc.tied_systems,
            }))?;
            Ok(0)
        }
        Command::Lemma {
            lemma,
            graph,
            budget_ms,
        } => {
            if !lemma.is_structural() {
                return Err(Failure::Usage(format!(
                    "{lemma} is not one of L12, L13, L14, L15"
                )));
            }
            verify(lemma, &graph, budget_ms)
        }
        Command::Verify {
            statement,
            graph,
            budget_ms,
        } => verify(statement, &graph, budget_ms),
        Command::Scheme { command } => scheme(command),
        Command::Scan(args) => scan(args),
        Command::Construct { graph } => {
            let Resolved { graph: g, family } = load(&graph)?;
            emit(&json!({
                "g6": write_graph6(&g),
                "n": g.n(),
                "m": g.edge_count(),
                "family": family.map(|f| f.to_string()),
            }))?;
            Ok(0)
        }
    }
}

fn verify(id: StatementId, graph: &str, budget_ms: Option<u64>) -> CliResult {
    let g = load(graph)?.graph;
    let report = check_statement(&g, id, &Budget::from_optional_millis(budget_ms));
    emit(&report)?;
    Ok(report_exit(&report))
}

fn report_exit(r: &StatementReport) -> u8 {
    match r.status {
        Status::Counterexample => 2,
        Status::Unknown => 3,
        _ => 0,
    }
}

fn scheme(command: SchemeCommand) -> CliResult {
    match command {
        SchemeCommand::Bound {
            lemma,
            sizes,
            r,
            host,
        } => {
            let sizes = parse_sizes(&sizes)?;
            let bound = scheme_bound(lemma, &sizes, r, host)?;
            emit(&json!({
                "lemma": lemma.to_string(),
                "sizes": sizes,
                "r": r,
                "host": host.to_string(),
                "bound": bound,
            }))?;
        }
        SchemeCommand::Oracle {
            sizes,
            r,
            host,
            cap,
        } => {
            let sizes = parse_sizes(&sizes)?;
            let placement = min_host_bruteforce(&sizes, r, host, cap)?;
            emit(&json!({
                "sizes": sizes,
                "r": r,
                "host": host.to_string(),
                "cap": cap,
                "min_len": placement.as_ref().map(|p| p.len),
                "classes": placement.map(|p| p.classes),
            }))?;
        }
    }
    Ok(0)
}

fn parse_sizes(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Usage(format!("bad class size {s:?} in {text:?}")))
        })
        .collect()
}

fn parse_statements(text: &str) -> Result<Vec<StatementId>, Failure> {
    if text == "all" {
        return Ok(StatementId::ALL.to_vec());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<StatementId>()
                .map_err(|e| Failure::Usage(e.to_string()))
        })
        .collect()
}

fn scan(args: ScanArgs) -> CliResult {
    let mut cfg = match &args.config {
        Some(path) => serde_json::from_str::<ScanConfig>(&fs::read_to_string(path)?)
            .map_err(|e| Failure::Usage(format!("config {}: {e}", path.display())))?,
        None => {
            let stream = match (args.n, &args.graph6_file) {
                (Some(n), None) => StreamSpec::Enumerate {
                    n,
                    connected: args.connected,
                    dedup: !args.labelled,
                },
                (None, Some(path)) => StreamSpec::Graph6File { path: path.clone() },
                _ => {
                    return Err(Failure::Usage(
                        "scan needs exactly one of --n, --graph6-file or --config".into(),
                    ))
                }
            };
            ScanConfig {
                stream,
                statements: Vec::new(),
                budget_ms: None,
                workers: 0,
                output: PathBuf::new(),
                resume: None,
                seed: None,
                limit: None,
            }
        }
    };
    if let Some(s) = &args.statements {
        cfg.statements = parse_statements(s)?;
    }
    if cfg.statements.is_empty() {
        return Err(Failure::Usage("no statements to check".into()));
    }
    if args.budget_ms.is_some() {
        cfg.budget_ms = args.budget_ms;
    }
    if let Some(w) = args.workers {
        cfg.workers = w;
    }
    if args.limit.is_some() {
        cfg.limit = args.limit;
    }
    if args.seed.is_some() {
        cfg.seed = args.seed;
    }
    if let Some(out) = &args.output {
        cfg.output = out.clone();
    }

    let totals: Totals = if cfg.output.as_os_str().is_empty() {
        let stdout = io::stdout();
        let mut lock = io::BufWriter::new(stdout.lock());
        scan_to_writer(&cfg, &mut lock)?.totals
    } else {
        let outcome = if args.resume {
            let text = fs::read_to_string(cfg.cursor_path())?;
            let cursor: Cursor = serde_json::from_str(&text)?;
            resume_scan(&cfg, cursor)?
        } else {
            run_scan(&cfg)?
        };
        emit(&outcome)?;
        outcome.totals
    };
    Ok(totals.exit_code() as u8)
}

/// Resolve a graph argument: constructor, graph6, `@file` or `-`.
fn load(spec: &str) -> Result<Resolved, Failure> {
    let line = if spec == "-" {
        let mut line = String::new();
        io::stdin().lock().read_line(&mut line)?;
        line
    } else if let Some(path) = spec.strip_prefix('@') {
        let text = fs::read_to_string(path)?;
        text.lines()
            .find(|l| !l.trim().is_empty())
            .unwrap_or_default()
            .to_string()
    } else {
        return Ok(resolve(spec)?);
    };
    let line = line.trim();
    if line.starts_with('{') {
        let v: Value =
            serde_json::from_str(line).map_err(|e| Failure::Usage(format!("graph JSON: {e}")))?;
        let g6 = v
            .get("g6")
            .and_then(Value::as_str)
            .ok_or_else(|| Failure::Usage("graph JSON has no \"g6\" field".into()))?;
        return Ok(resolve(g6)?);
    }
    Ok(resolve(line)?)
}

fn emit<T: serde::Serialize + ?Sized>(value: &T) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    serde_json::to_writer(&mut lock, value)?;
    lock.write_all(b"\n")?;
    Ok(())
}
