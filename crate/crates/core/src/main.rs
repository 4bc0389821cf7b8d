use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use paintlab::exact::{choice_number, chromatic_number, paintability, SolverConfig, SolverError};
use paintlab::experiment::{
    chain_check, ratio_sweep, run_experiment, trial_graph, verify_partitions, ExperimentConfig, ExperimentError,
};
use paintlab::game::run_game;
use paintlab::graph::{complete, complete_bipartite, cycle, path, petersen, read_edge_list, star, write_edge_list, Graph};
use paintlab::indset::{k0, DEFAULT_EXTRACTION_ATTEMPTS};
use paintlab::rng::derive_seed;
use paintlab::strategies::{corrector_by_name, painter_by_name, StrategyParams};
use paintlab::theory::{regime_bounds, RegimeBounds};

#[derive(Parser)]
#[command(name = "paintlab", version, about = "Paint-Correct game simulator and exact solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct GraphSource {
    /// Edge-list file.
    #[arg(long, conflicts_with_all = ["family", "n"])]
    graph: Option<PathBuf>,
    /// complete:N, path:N, cycle:N, star:N, bipartite:A,B or petersen.
    #[arg(long, conflicts_with = "n")]
    family: Option<String>,
    /// Draw G(n, p) instead.
    #[arg(long, requires = "p")]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded G(n, p) as an edge list.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact chromatic, choice and paint numbers of a small graph.
    Solve {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play one game and write its transcript as JSON lines.
    Play {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        painter: String,
        #[arg(long)]
        corrector: String,
        #[arg(long)]
        budget: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Strategy parameters as TOML.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment config.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's master seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Exhaustive chi <= chi_L <= chi_P <= chi ln n + 1 check on small graphs.
    ChainCheck {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 300)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a config at several n and check the mean ratio does not grow.
    RatioSweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Theoretical quantities for G(n, p).
    Predict {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check partition invariants on random subsets of G(n, p).
    VerifyPartition {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long, default_value_t = 20)]
        invocations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Verdict(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Verdict(_) => 3,
            CliError::Resource(_) => 4,
        }
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        if e.is_resource_cap() {
            CliError::Resource(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::TooManyVertices { .. } | SolverError::ListSizeTooLarge { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

fn config_err(e: impl std::fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| config_err(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(config_err),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn family(spec: &str) -> Result<Graph, CliError> {
    let bad = || config_err(format!("unknown family {spec:?}"));
    let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    Ok(match name {
        "complete" => complete(num(arg)?),
        "path" => path(num(arg)?),
        "cycle" if num(arg)? >= 3 => cycle(num(arg)?),
        "star" => star(num(arg)?),
        "bipartite" => {
            let (a, b) = arg.split_once(',').ok_or_else(bad)?;
            complete_bipartite(num(a)?, num(b)?)
        }
        "petersen" if arg.is_empty() => petersen(),
        _ => return Err(bad()),
    })
}

fn load_graph(source: &GraphSource, seed: u64) -> Result<Graph, CliError> {
    match (&source.graph, &source.family, source.n, source.p) {
        (Some(file), _, _, _) => read_edge_list(file).map_err(|e| config_err(format!("{}: {e}", file.display()))),
        (_, Some(spec), _, _) => family(spec),
        (_, _, Some(n), Some(p)) => trial_graph(n, p, derive_seed(seed, 0)).map_err(config_err),
        _ => Err(config_err("give --graph, --family or --n with --p")),
    }
}

fn with_seed(mut cfg: ExperimentConfig, seed: Option<u64>) -> ExperimentConfig {
    if let Some(s) = seed {
        cfg.master_seed = s;
    }
    cfg
}

#[derive(Serialize)]
struct SolveReport {
    n: usize,
    m: usize,
    chi: usize,
    chi_list: Option<usize>,
    chi_paint: usize,
}

#[derive(Serialize)]
struct Prediction {
    k0: Option<usize>,
    omega: f64,
    #[serde(flatten)]
    bounds: RegimeBounds,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { n, p, seed, out } => {
            let g = trial_graph(n, p, seed).map_err(config_err)?;
            if g.is_hashed() {
                return Err(CliError::Resource(format!("n = {n} at p = {p} is too large to write out")));
            }
            let mut buf = Vec::new();
            write_edge_list(&g, &mut buf).map_err(config_err)?;
            emit(out.as_deref(), &String::from_utf8(buf).expect("ascii"))
        }
        Command::Solve { source, seed, out } => {
            let g = load_graph(&source, seed)?;
            let cfg = SolverConfig::default();
            let chi = chromatic_number(&g, &cfg)?;
            let chi_paint = paintability(&g, &cfg)?;
            let chi_list = choice_number(&g, &cfg).ok();
            emit(out.as_deref(), &json(&SolveReport { n: g.n(), m: g.edge_count(), chi, chi_list, chi_paint }))
        }
        Command::Play { source, painter, corrector, budget, seed, config, out } => {
            let g = load_graph(&source, seed)?;
            let params: StrategyParams = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
                    toml::from_str(&text).map_err(config_err)?
                }
                None => StrategyParams::default(),
            };
            let mut painter = painter_by_name(&painter, &g).map_err(config_err)?;
            let mut corrector = corrector_by_name(&corrector, &g, &params).map_err(config_err)?;
            let report = run_game(&g, budget, painter.as_mut(), corrector.as_mut(), seed, true);
            eprintln!("{} after {} rounds", report.outcome.label(), report.rounds);
            let transcript = report.transcript.expect("recorded");
            emit(out.as_deref(), &transcript.to_jsonl_string())
        }
        Command::Simulate { config, seed, out, format } => {
            let cfg = with_seed(ExperimentConfig::load(&config)?, seed);
            let result = run_experiment(&cfg)?;
            eprintln!(
                "win rate {:.3}, mean ratio {}",
                result.summary.win_rate,
                result.summary.ratio_mean.map_or("n/a".to_string(), |r| format!("{r:.4}"))
            );
            match (out, format) {
                (Some(path), Format::Csv) => emit(Some(&path), &result.csv_string()),
                (Some(path), Format::Json) => emit(Some(&path), &json(&result)),
                (None, _) if cfg.output.csv.is_some() || cfg.output.summary.is_some() => {
                    result.write_outputs(&cfg).map_err(CliError::from)
                }
                (None, Format::Csv) => emit(None, &result.csv_string()),
                (None, Format::Json) => emit(None, &json(&result)),
            }
        }
        Command::ChainCheck { n_max, samples, seed, out, format } => {
            let report = chain_check(n_max, samples, seed, &SolverConfig::default())?;
            let text = match format {
                Format::Json => json(&report),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["name", "n", "m", "chi", "chi_list", "chi_paint", "upper", "ok"]).map_err(config_err)?;
                    for r in &report.rows {
                        w.write_record([
                            r.name.clone(),
                            r.n.to_string(),
                            r.m.to_string(),
                            r.chi.to_string(),
                            r.chi_list.map_or(String::new(), |l| l.to_string()),
                            r.chi_paint.to_string(),
                            r.upper.to_string(),
                            r.ok.to_string(),
                        ])
                        .map_err(config_err)?;
                    }
                    String::from_utf8(w.into_inner().map_err(config_err)?).expect("utf-8")
                }
            };
            emit(out.as_deref(), &text)?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Verdict(format!("{} chain violations", report.violations.len())))
            }
        }
        Command::RatioSweep { config, n_list, seed, out, format } => {
            let cfg = with_seed(ExperimentConfig::load(&config)?, seed);
            let report = ratio_sweep(&cfg, &n_list)?;
            let text = match format {
                Format::Json => json(&report),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for s in &report.points {
                        w.serialize(s).map_err(config_err)?;
                    }
                    String::from_utf8(w.into_inner().map_err(config_err)?).expect("utf-8")
                }
            };
            emit(out.as_deref(), &text)?;
            if report.monotone {
                Ok(())
            } else {
                Err(CliError::Verdict("mean ratio increased by more than the slack".into()))
            }
        }
        Command::Predict { n, p, omega, out } => {
            let omega = omega.unwrap_or_else(|| StrategyParams::default().resolve_omega(n));
            let bounds = regime_bounds(n as f64, p, omega).map_err(config_err)?;
            let k0 = k0(n, p).map_err(config_err)?;
            emit(out.as_deref(), &json(&Prediction { k0, omega, bounds }))
        }
        Command::VerifyPartition { n, p, omega, invocations, seed, out } => {
            let omega = omega.unwrap_or_else(|| StrategyParams::default().resolve_omega(n));
            let verdict = verify_partitions(n, p, omega, invocations, DEFAULT_EXTRACTION_ATTEMPTS, seed)?;
            emit(out.as_deref(), &json(&verdict))?;
            if verdict.violations.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verdict(format!("{} partition violations", verdict.violations.len())))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
