//! The `hedonic` command line.
//!
//! Graph arguments are a file path, `-` for standard input, or
//! `fixture:NAME` for a built-in fixture (whose default `k` then applies when
//! `--k` is absent). Reports go to standard output or to `--out`.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | I/O error |
//! | 2 | usage error |
//! | 3 | parse error in a graph, partition or config file |
//! | 4 | domain error (wrong `k`, weighted input to an unweighted solver, ...) |
//! | 5 | non-convergence (iteration budget or heuristic restarts exhausted) |
//! | 6 | invalid partition |
//! | 7 | instance too large for a brute-force routine |

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hedonic_core::oracle::{
    core_emptiness, kn_matching_partition, opt_max_util, sc_emptiness, verify_membership, Concept, Guard,
};
use hedonic_core::stability::{
    arbmax, find_core_k3, find_csc, find_eps_a_core, find_eps_m_core, find_nash_stable, MergeOrder,
};
use hedonic_core::workbench::{core_heuristic, gen_fixture, gen_random, Family, HeuristicConfig, RngStream};
use hedonic_core::{mnm, ErrorKind, GameInstance, Graph, Partition, Rational};
use serde_json::{json, Value};
use thiserror::Error;

use crate::{config, graph_file, parallel, report};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Core(#[from] hedonic_core::Error),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::InvalidPartition(_) => 6,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Domain => 4,
                ErrorKind::NonConvergence => 5,
                ErrorKind::InvalidPartition => 6,
                ErrorKind::TooLarge => 7,
            },
        }
    }
}

/// What a successful run produced.
#[derive(Debug)]
pub struct Output {
    /// Text for standard output (empty when written to `--out`).
    pub stdout: String,
    pub exit_code: u8,
}

#[derive(Debug, Parser)]
#[command(name = "hedonic", version, about = "Hedonic games with bounded coalition size")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a partitioning algorithm.
    Solve(SolveArgs),
    /// Check a partition against a stability concept.
    Verify(VerifyArgs),
    /// Brute-force questions: optimum, core or strict-core emptiness, K_n factorization.
    Oracle(OracleArgs),
    /// Run a heuristic campaign from a config file.
    Simulate(SimulateArgs),
    /// Write a built-in fixture as a graph file.
    Fixture(FixtureArgs),
    /// Write a random graph from a family as a graph file.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Coalition size cap.
    #[arg(long)]
    k: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Algorithm {
    Mnm,
    CoreK3,
    EpsACore,
    EpsMCore,
    Csc,
    Nash,
    Arbmax,
    CoreHeuristic,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Graph file, `-`, or `fixture:NAME`.
    graph: String,
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    /// Additive slack for eps-a-core (default floor(k/2) - 1).
    #[arg(long)]
    eps_a: Option<Rational>,
    /// Multiplicative factor for eps-m-core (default 2).
    #[arg(long)]
    eps_m: Option<Rational>,
    /// Seed for arbmax and core-heuristic.
    #[arg(long)]
    seed: Option<u64>,
    /// Explicit arbmax order as agent pairs, e.g. `1-2,2-3`.
    #[arg(long)]
    merge_order: Option<String>,
    #[arg(long)]
    restart_threshold: Option<u32>,
    #[arg(long)]
    max_restarts: Option<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConceptArg {
    Core,
    StrictCore,
    Csc,
    EpsACore,
    EpsMCore,
    Nash,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    graph: String,
    /// JSON partition: a list of lists, `{"partition": ...}`, or a report.
    #[arg(long)]
    partition: PathBuf,
    #[arg(long, value_enum)]
    concept: ConceptArg,
    #[arg(long)]
    eps_a: Option<Rational>,
    #[arg(long)]
    eps_m: Option<Rational>,
    /// Lift the brute-force size guards.
    #[arg(long)]
    guard_override: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Question {
    Opt,
    CoreEmpty,
    ScEmpty,
    KnFactorize,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(value_enum)]
    question: Question,
    /// Graph for opt, core-empty and sc-empty.
    graph: Option<String>,
    /// Vertex count for kn-factorize.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    guard_override: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    config: PathBuf,
    /// Worker threads (default from HEDONIC_WORKERS, else all cores).
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FixtureArgs {
    /// e.g. `fig1`, `complete(8)`, `sc_gadget(cycle(6), 3)`.
    name: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// e.g. `gnp(0.5)`, `uniform_tree`, `watts_strogatz(5, 0.5)`.
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Result<Output, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            return match e.kind() {
                K::DisplayHelp | K::DisplayVersion => Ok(Output { stdout: e.to_string(), exit_code: 0 }),
                _ => Err(CliError::Usage(e.to_string())),
            };
        }
    };
    match cli.command {
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Oracle(a) => oracle(a),
        Command::Simulate(a) => simulate(a),
        Command::Fixture(a) => fixture(a),
        Command::Generate(a) => generate(a),
    }
}

fn read_text(path: &str) -> Result<String, CliError> {
    let io = |source| CliError::Io { path: path.to_string(), source };
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io)
    }
}

fn load_game(graph: &str, k: Option<usize>) -> Result<GameInstance, CliError> {
    if let Some(spec) = graph.strip_prefix("fixture:") {
        let game = gen_fixture(spec)?;
        return Ok(match k {
            Some(k) => game.with_k(k)?,
            None => game,
        });
    }
    let text = read_text(graph)?;
    let (g, scale) = graph_file::parse(&text).map_err(|e| CliError::Parse(format!("{graph}: {e}")))?;
    let k = k.ok_or_else(|| CliError::Usage("--k is required for graph files".into()))?;
    Ok(GameInstance::with_scale(g, k, scale)?)
}

fn emit(out: Option<&Path>, text: String, exit_code: u8) -> Result<Output, CliError> {
    match out {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            Ok(Output { stdout: String::new(), exit_code })
        }
        None => Ok(Output { stdout: text, exit_code }),
    }
}

fn emit_json(out: Option<&Path>, v: &Value, exit_code: u8) -> Result<Output, CliError> {
    let mut text = serde_json::to_string_pretty(v).expect("reports serialize");
    text.push('\n');
    emit(out, text, exit_code)
}

fn reject(flag: &str, present: bool, algorithm: &str) -> Result<(), CliError> {
    if present {
        Err(CliError::Usage(format!("{flag} does not apply to {algorithm}")))
    } else {
        Ok(())
    }
}

fn parse_merge_order(s: &str) -> Result<Vec<(usize, usize)>, CliError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t
                .split_once('-')
                .ok_or_else(|| CliError::Usage(format!("merge order item `{t}` is not `u-v`")))?;
            let num = |x: &str| {
                x.trim().parse().map_err(|_| CliError::Usage(format!("`{x}` is not an agent id")))
            };
            Ok((num(a)?, num(b)?))
        })
        .collect()
}

fn solve(a: SolveArgs) -> Result<Output, CliError> {
    let game = load_game(&a.graph, a.common.k)?;
    let scale = game.weight_scale();
    let name = a.algorithm.to_possible_value().expect("no skipped variants").get_name().to_string();
    let uses_eps_a = matches!(a.algorithm, Algorithm::EpsACore);
    let uses_eps_m = matches!(a.algorithm, Algorithm::EpsMCore);
    let uses_seed = matches!(a.algorithm, Algorithm::Arbmax | Algorithm::CoreHeuristic);
    let uses_restarts = matches!(a.algorithm, Algorithm::CoreHeuristic);
    reject("--eps-a", a.eps_a.is_some() && !uses_eps_a, &name)?;
    reject("--eps-m", a.eps_m.is_some() && !uses_eps_m, &name)?;
    reject("--seed", a.seed.is_some() && !uses_seed, &name)?;
    reject("--merge-order", a.merge_order.is_some() && !matches!(a.algorithm, Algorithm::Arbmax), &name)?;
    reject(
        "--restart-threshold/--max-restarts",
        (a.restart_threshold.is_some() || a.max_restarts.is_some()) && !uses_restarts,
        &name,
    )?;

    let mut result = serde_json::Map::new();
    result.insert("algorithm".into(), json!(name));
    let mut seeds = Value::Null;
    let mut exit_code = 0;
    let partition: Option<Partition> = match a.algorithm {
        Algorithm::Mnm => {
            let (p, t) = mnm::match_and_merge(&game);
            result.insert("trace".into(), report::trace(&t));
            Some(p)
        }
        Algorithm::CoreK3 | Algorithm::EpsACore | Algorithm::EpsMCore | Algorithm::Nash => {
            let (p, stats) = match a.algorithm {
                Algorithm::CoreK3 => find_core_k3(&game)?,
                Algorithm::EpsACore => {
                    let eps = a.eps_a.unwrap_or(Rational::integer((game.k() / 2).saturating_sub(1) as u64));
                    result.insert("eps_a".into(), json!(eps.to_string()));
                    find_eps_a_core(&game, eps)?
                }
                Algorithm::EpsMCore => {
                    let eps = a.eps_m.unwrap_or(Rational::integer(2));
                    result.insert("eps_m".into(), json!(eps.to_string()));
                    find_eps_m_core(&game, eps)?
                }
                _ => find_nash_stable(&game)?,
            };
            result.insert("stats".into(), report::solver_stats(&stats));
            Some(p)
        }
        Algorithm::Csc => {
            let (p, stats) = find_csc(&game);
            result.insert("stats".into(), report::solver_stats(&stats));
            Some(p)
        }
        Algorithm::Arbmax => {
            let order = match (&a.merge_order, a.seed) {
                (Some(s), None) => MergeOrder::Explicit(parse_merge_order(s)?),
                (None, Some(seed)) => {
                    seeds = json!({ "seed": seed });
                    MergeOrder::Seeded(seed)
                }
                _ => return Err(CliError::Usage("arbmax needs exactly one of --seed or --merge-order".into())),
            };
            Some(arbmax(&game, &order)?)
        }
        Algorithm::CoreHeuristic => {
            let seed = a.seed.ok_or_else(|| CliError::Usage("core-heuristic needs --seed".into()))?;
            seeds = json!({ "seed": seed, "rng": RngStream::ALGORITHM });
            let defaults = HeuristicConfig::default();
            let config = HeuristicConfig {
                restart_threshold: a.restart_threshold.unwrap_or(defaults.restart_threshold),
                max_restarts: a.max_restarts.unwrap_or(defaults.max_restarts),
                ..defaults
            };
            let r = core_heuristic(&game, &mut RngStream::new(seed), &config);
            result.insert("stats".into(), report::heuristic_stats(&r.stats));
            result.insert("outcome".into(), json!(if r.partition().is_some() { "in_core" } else { "restarts_exhausted" }));
            if r.partition().is_none() {
                exit_code = 5;
            }
            r.partition().cloned()
        }
    };
    match &partition {
        Some(p) => {
            result.insert("partition".into(), report::partition(p));
            result.insert("welfare".into(), report::welfare(game.social_welfare(p), scale));
        }
        None => {
            result.insert("partition".into(), Value::Null);
            result.insert("welfare".into(), Value::Null);
        }
    }
    let v = report::envelope("solve", report::instance(&game), Value::Object(result), seeds);
    emit_json(a.common.out.as_deref(), &v, exit_code)
}

fn guard(override_: bool) -> Guard {
    if override_ {
        Guard::unlimited()
    } else {
        Guard::default()
    }
}

fn verify(a: VerifyArgs) -> Result<Output, CliError> {
    let game = load_game(&a.graph, a.common.k)?;
    let path = a.partition.display().to_string();
    let text = read_text(&path)?;
    let json: Value = serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
    let blocks = report::read_partition(&json)
        .ok_or_else(|| CliError::Parse(format!("{path}: no partition (expected a list of agent lists)")))?;
    let p = Partition::new(game.n(), blocks).map_err(|e| CliError::InvalidPartition(e.to_string()))?;
    game.validate(&p).map_err(|e| CliError::InvalidPartition(e.to_string()))?;
    let name = a.concept.to_possible_value().expect("no skipped variants").get_name().to_string();
    reject("--eps-a", a.eps_a.is_some() && !matches!(a.concept, ConceptArg::EpsACore), &name)?;
    reject("--eps-m", a.eps_m.is_some() && !matches!(a.concept, ConceptArg::EpsMCore), &name)?;
    let concept = match a.concept {
        ConceptArg::Core => Concept::Core,
        ConceptArg::StrictCore => Concept::StrictCore,
        ConceptArg::Csc => Concept::Csc,
        ConceptArg::EpsACore => Concept::EpsACore(
            a.eps_a.ok_or_else(|| CliError::Usage("eps-a-core needs --eps-a".into()))?,
        ),
        ConceptArg::EpsMCore => Concept::EpsMCore(
            a.eps_m.ok_or_else(|| CliError::Usage("eps-m-core needs --eps-m".into()))?,
        ),
        ConceptArg::Nash => Concept::Nash,
    };
    let m = verify_membership(&game, &p, concept, &guard(a.guard_override))?;
    let mut result = report::membership(&m);
    result["concept"] = json!(name);
    result["partition"] = report::partition(&p);
    result["welfare"] = report::welfare(game.social_welfare(&p), game.weight_scale());
    let v = report::envelope("verify", report::instance(&game), result, Value::Null);
    emit_json(a.common.out.as_deref(), &v, 0)
}

fn oracle(a: OracleArgs) -> Result<Output, CliError> {
    let guard = guard(a.guard_override);
    if let Question::KnFactorize = a.question {
        if a.graph.is_some() || a.common.k.is_some() {
            return Err(CliError::Usage("kn-factorize takes --n only".into()));
        }
        let n = a.n.ok_or_else(|| CliError::Usage("kn-factorize needs --n".into()))?;
        let ms = kn_matching_partition(n)?;
        let result = json!({ "question": "kn-factorize", "n": n, "matchings": report::matchings(&ms) });
        let v = report::envelope("oracle", Value::Null, result, Value::Null);
        return emit_json(a.common.out.as_deref(), &v, 0);
    }
    if a.n.is_some() {
        return Err(CliError::Usage("--n applies to kn-factorize only".into()));
    }
    let graph = a.graph.as_deref().ok_or_else(|| CliError::Usage("this question needs a graph".into()))?;
    let game = load_game(graph, a.common.k)?;
    let mut result = match a.question {
        Question::Opt => {
            let (p, w) = opt_max_util(&game, &guard)?;
            json!({ "partition": report::partition(&p), "welfare": report::welfare(w, game.weight_scale()) })
        }
        Question::CoreEmpty => report::emptiness(&core_emptiness(&game, &guard)?),
        Question::ScEmpty => report::emptiness(&sc_emptiness(&game, &guard)?),
        Question::KnFactorize => unreachable!("handled above"),
    };
    let name = a.question.to_possible_value().expect("no skipped variants").get_name().to_string();
    result["question"] = json!(name);
    let v = report::envelope("oracle", report::instance(&game), result, Value::Null);
    emit_json(a.common.out.as_deref(), &v, 0)
}

fn simulate(a: SimulateArgs) -> Result<Output, CliError> {
    let path = a.config.display().to_string();
    let text = read_text(&path)?;
    let config = config::parse(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
    let workers = a.workers.unwrap_or_else(parallel::default_workers);
    let r = parallel::run_campaign_parallel(&config, workers);
    let seeds = json!({ "master_seed": config.master_seed, "rng": RngStream::ALGORITHM, "derivation": "derive(master_seed, family, index)" });
    let instance = json!({ "n": config.n, "k": config.k, "instances_per_family": config.instances });
    let v = report::envelope("simulate", instance, report::campaign(&r), seeds);
    emit_json(a.out.as_deref(), &v, 0)
}

fn graph_text(g: &Graph, scale: u64, header: &[String]) -> Result<String, CliError> {
    let body = graph_file::serialize(g, scale).map_err(|e| {
        CliError::Core(hedonic_core::Error::Unsupported(e.to_string()))
    })?;
    let mut text: String = header.iter().map(|h| format!("# {h}\n")).collect();
    text.push_str(&body);
    Ok(text)
}

fn fixture(a: FixtureArgs) -> Result<Output, CliError> {
    let game = gen_fixture(&a.name)?;
    let header = [format!("fixture {}", a.name), format!("k = {}", game.k())];
    let text = graph_text(game.graph(), game.weight_scale(), &header)?;
    emit(a.out.as_deref(), text, 0)
}

fn generate(a: GenerateArgs) -> Result<Output, CliError> {
    let family = Family::parse(&a.family)?;
    let game = gen_random(&family, a.n, 2, &mut RngStream::new(a.seed))?;
    let header = [format!("{family}, n = {}, seed = {}", a.n, a.seed)];
    let text = graph_text(game.graph(), game.weight_scale(), &header)?;
    emit(a.out.as_deref(), text, 0)
}
