//! Seeded batch experiments: one fresh `G(n,p)` and one game per trial,
//! rows in trial order, plus the exhaustive chain check over small graphs.

mod chain;
mod config;
mod partition;

pub use chain::{chain_check, ChainReport, ChainRow};
pub use config::{BudgetRule, ExperimentConfig, OutputConfig, ProbabilitySpec, CONFIG_VERSION};
pub use partition::{verify_partitions, PartitionVerdict};

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::SolverError;
use crate::game::run_game;
use crate::graph::{gnp, gnp_hashed, ComponentClass, Graph, GraphError, DENSE_METHOD_MIN_P};
use crate::rng::derive_seed;
use crate::strategies::{classify_set, corrector_by_name, painter_by_name, Regime, SetClass, StrategyError};
use crate::theory::chi_asymptotic;

/// Above this many vertices a dense graph is generated lazily instead of as
/// a bit matrix.
pub const MATRIX_MAX_N: usize = 40_000;

/// Relative slack allowed between consecutive mean ratios in a sweep.
pub const SWEEP_SLACK: f64 = 0.05;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl ExperimentError {
    /// Whether the failure is a solver size cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            ExperimentError::Solver(SolverError::TooManyVertices { .. } | SolverError::ListSizeTooLarge { .. })
                | ExperimentError::Strategy(StrategyError::Solver(
                    SolverError::TooManyVertices { .. } | SolverError::ListSizeTooLarge { .. }
                ))
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub trial: usize,
    pub seed: u64,
    pub outcome: String,
    pub corrector_won: bool,
    pub rounds: usize,
    pub budget: u32,
    pub max_erasers_used: u32,
    pub total_erasers: u64,
    /// Erasers spent in rounds whose presented set is small, medium or large.
    pub small_erasers: u64,
    pub medium_erasers: u64,
    pub large_erasers: u64,
    pub extraction_fallbacks: usize,
    pub partition_fallbacks: usize,
    pub empty_draws: usize,
    pub edges: usize,
    pub complex_components: usize,
    /// Absent when `np <= 1`.
    pub chi_asymptotic: Option<f64>,
    /// `(max_erasers_used + 1) / chi_asymptotic`.
    pub ratio: Option<f64>,
    pub wall_seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub p: f64,
    pub budget: u32,
    pub painter: String,
    pub corrector: String,
    pub trials: usize,
    pub corrector_wins: usize,
    pub win_rate: f64,
    pub ratio_min: Option<f64>,
    pub ratio_mean: Option<f64>,
    pub ratio_max: Option<f64>,
    pub mean_max_erasers: f64,
    pub max_max_erasers: u32,
    pub mean_rounds: f64,
    pub trials_with_complex: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
}

impl ExperimentResult {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), ExperimentError> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("summary serializes")
    }

    /// Writes the files named in the config's `output` table.
    pub fn write_outputs(&self, cfg: &ExperimentConfig) -> Result<(), ExperimentError> {
        if let Some(path) = &cfg.output.csv {
            self.write_csv(std::fs::File::create(path)?)?;
        }
        if let Some(path) = &cfg.output.summary {
            std::fs::write(path, self.summary_json() + "\n")?;
        }
        Ok(())
    }
}

/// The graph for one trial: a bit matrix or adjacency lists when they fit,
/// a lazily hashed graph otherwise.
pub fn trial_graph(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if n > MATRIX_MAX_N && p >= DENSE_METHOD_MIN_P {
        gnp_hashed(n, p, seed)
    } else {
        gnp(n, p, seed)
    }
}

fn regime_for(corrector: &str, default: Regime) -> Regime {
    match corrector {
        "sparse" => Regime::Sparse,
        "very-sparse" => Regime::VerySparse,
        _ => default,
    }
}

/// Trial `t` uses seed `derive_seed(master_seed, t)`; its graph is drawn from
/// `derive_seed(seed, 0)` and its game from `derive_seed(seed, 1)`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult, ExperimentError> {
    cfg.validate()?;
    let n = cfg.n;
    let p = cfg.p.resolve(n);
    let budget = cfg.budget.resolve(n, p)?;
    let mut params = cfg.params.clone();
    params.p.get_or_insert(p);
    params.regime = regime_for(&cfg.corrector, params.regime);
    let omega = params.resolve_omega(n);
    let chi = chi_asymptotic(n as f64, p).ok();

    let run_trial = |trial: usize| -> Result<ReportRow, ExperimentError> {
        let start = Instant::now();
        let seed = derive_seed(cfg.master_seed, trial as u64);
        let g = trial_graph(n, p, derive_seed(seed, 0))?;
        let mut painter = painter_by_name(&cfg.painter, &g)?;
        let mut corrector = corrector_by_name(&cfg.corrector, &g, &params)?;
        let report = run_game(&g, budget, painter.as_mut(), corrector.as_mut(), derive_seed(seed, 1), false);
        debug_assert!(report.max_erasers_used <= budget);

        let mut by_class = [0u64; 3];
        for r in &report.round_stats {
            let spent = (r.presented - r.kept) as u64;
            let idx = match classify_set(r.presented, n, p, omega) {
                SetClass::Small => 0,
                SetClass::Medium => 1,
                SetClass::Large => 2,
            };
            by_class[idx] += spent;
        }
        debug_assert_eq!(by_class.iter().sum::<u64>(), report.total_erasers_used);
        let diag = corrector.diagnostics().unwrap_or_default();
        let complex_components = if g.is_hashed() {
            0
        } else {
            g.components().iter().filter(|c| c.class == ComponentClass::Complex).count()
        };
        Ok(ReportRow {
            trial,
            seed,
            outcome: report.outcome.label().to_string(),
            corrector_won: report.outcome.corrector_won(),
            rounds: report.rounds,
            budget,
            max_erasers_used: report.max_erasers_used,
            total_erasers: report.total_erasers_used,
            small_erasers: by_class[0],
            medium_erasers: by_class[1],
            large_erasers: by_class[2],
            extraction_fallbacks: diag.extraction_fallbacks,
            partition_fallbacks: diag.partition_fallbacks,
            empty_draws: diag.empty_draws,
            edges: if g.is_hashed() { 0 } else { g.edge_count() },
            complex_components,
            chi_asymptotic: chi,
            ratio: chi.map(|c| (report.max_erasers_used as f64 + 1.0) / c),
            wall_seconds: cfg.output.wall_time.then(|| start.elapsed().as_secs_f64()),
        })
    };

    let rows: Vec<ReportRow> = (0..cfg.trials).into_par_iter().map(run_trial).collect::<Result<_, _>>()?;
    let summary = summarize(cfg, p, budget, &rows);
    Ok(ExperimentResult { rows, summary })
}

fn summarize(cfg: &ExperimentConfig, p: f64, budget: u32, rows: &[ReportRow]) -> Summary {
    let t = rows.len() as f64;
    let wins = rows.iter().filter(|r| r.corrector_won).count();
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
    let (ratio_min, ratio_mean, ratio_max) = if ratios.is_empty() {
        (None, None, None)
    } else {
        (
            Some(ratios.iter().copied().fold(f64::INFINITY, f64::min)),
            Some(ratios.iter().sum::<f64>() / ratios.len() as f64),
            Some(ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
        )
    };
    Summary {
        n: cfg.n,
        p,
        budget,
        painter: cfg.painter.clone(),
        corrector: cfg.corrector.clone(),
        trials: rows.len(),
        corrector_wins: wins,
        win_rate: wins as f64 / t,
        ratio_min,
        ratio_mean,
        ratio_max,
        mean_max_erasers: rows.iter().map(|r| r.max_erasers_used as f64).sum::<f64>() / t,
        max_max_erasers: rows.iter().map(|r| r.max_erasers_used).max().unwrap_or(0),
        mean_rounds: rows.iter().map(|r| r.rounds as f64).sum::<f64>() / t,
        trials_with_complex: rows.iter().filter(|r| r.complex_components > 0).count(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub points: Vec<Summary>,
    /// Consecutive mean ratios never rise by more than the slack.
    pub monotone: bool,
}

/// Runs `base` once per `n`, everything else fixed. Pairs of points where
/// either ratio is undefined do not count against monotonicity.
pub fn ratio_sweep(base: &ExperimentConfig, n_list: &[usize]) -> Result<SweepReport, ExperimentError> {
    if n_list.is_empty() {
        return Err(ExperimentError::Config("empty n list".into()));
    }
    let configs: Vec<ExperimentConfig> = n_list.iter().map(|&n| ExperimentConfig { n, ..base.clone() }).collect();
    for c in &configs {
        c.validate()?;
    }
    let mut points = Vec::with_capacity(configs.len());
    for c in &configs {
        points.push(run_experiment(c)?.summary);
    }
    let monotone = points.windows(2).all(|w| match (w[0].ratio_mean, w[1].ratio_mean) {
        (Some(a), Some(b)) => b <= a * (1.0 + SWEEP_SLACK),
        _ => true,
    });
    Ok(SweepReport { points, monotone })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(n: usize, p: ProbabilitySpec, budget: BudgetRule, painter: &str, corrector: &str, trials: usize) -> ExperimentConfig {
        ExperimentConfig {
            version: CONFIG_VERSION,
            n,
            p,
            trials,
            master_seed: 2024,
            budget,
            painter: painter.into(),
            corrector: corrector.into(),
            params: Default::default(),
            output: Default::default(),
        }
    }

    #[test]
    fn rows_are_deterministic_and_accounted() {
        let cfg = config(512, ProbabilitySpec::Value(0.5), BudgetRule::PredictedTimes(2.5), "random:0.5", "dense", 3);
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a.csv_string(), b.csv_string());
        assert_eq!(a.summary_json(), b.summary_json());
        for (t, r) in a.rows.iter().enumerate() {
            assert_eq!(r.trial, t);
            assert_eq!(r.seed, derive_seed(2024, t as u64));
            assert_eq!(r.small_erasers + r.medium_erasers + r.large_erasers, r.total_erasers);
            assert!(r.max_erasers_used <= r.budget);
            assert!(r.ratio.unwrap() > 0.0);
            assert!(r.wall_seconds.is_none());
        }
        let header = a.csv_string().lines().next().unwrap().to_string();
        assert!(header.starts_with("trial,seed,outcome,"));
    }

    #[test]
    fn row_matches_a_direct_game() {
        let cfg = config(300, ProbabilitySpec::Value(0.3), BudgetRule::Fixed(60), "low-eraser", "maximal-is", 1);
        let row = &run_experiment(&cfg).unwrap().rows[0];
        let seed = derive_seed(2024, 0);
        let g = gnp(300, 0.3, derive_seed(seed, 0)).unwrap();
        let r = run_game(
            &g,
            60,
            &mut crate::strategies::LowEraserPainter,
            &mut crate::strategies::MaximalIsCorrector,
            derive_seed(seed, 1),
            false,
        );
        assert_eq!((row.rounds, row.max_erasers_used, row.total_erasers), (r.rounds, r.max_erasers_used, r.total_erasers_used));
        assert_eq!(row.edges, g.edge_count());
    }

    #[test]
    fn sparse_rows_have_no_ratio() {
        let cfg = config(400, ProbabilitySpec::COverN { c_over_n: 0.5 }, BudgetRule::Fixed(2), "low-eraser", "very-sparse", 4);
        let res = run_experiment(&cfg).unwrap();
        assert!(res.rows.iter().all(|r| r.ratio.is_none() && r.chi_asymptotic.is_none()));
        assert_eq!(res.summary.ratio_mean, None);
        assert_eq!(res.summary.win_rate, 1.0);
    }

    #[test]
    fn bad_names_fail_before_trials() {
        let cfg = config(50, ProbabilitySpec::Value(0.5), BudgetRule::Fixed(3), "full-set", "nope", 1);
        assert!(matches!(run_experiment(&cfg), Err(ExperimentError::Config(_))));
    }

    #[test]
    fn corrector_that_rejects_the_graph_is_an_error() {
        let cfg = config(60, ProbabilitySpec::Value(0.5), BudgetRule::Fixed(3), "full-set", "tree", 1);
        assert!(matches!(run_experiment(&cfg), Err(ExperimentError::Strategy(_))));
    }

    #[test]
    fn wall_time_is_opt_in() {
        let mut cfg = config(64, ProbabilitySpec::Value(0.5), BudgetRule::Fixed(20), "full-set", "maximal-is", 1);
        cfg.output.wall_time = true;
        assert!(run_experiment(&cfg).unwrap().rows[0].wall_seconds.is_some());
    }

    #[test]
    fn sweep_single_point_is_monotone() {
        let cfg = config(256, ProbabilitySpec::Value(0.5), BudgetRule::PredictedTimes(2.5), "full-set", "dense", 2);
        let s = ratio_sweep(&cfg, &[256]).unwrap();
        assert!(s.monotone);
        assert_eq!(s.points.len(), 1);
        assert!(ratio_sweep(&cfg, &[]).is_err());
    }
}
