use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::strategies::{check_corrector_name, check_painter_name, StrategyParams};
use crate::theory::k0_asymptotic;

pub const CONFIG_VERSION: u32 = 1;

/// Edge probability, either literal or as a function of `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProbabilitySpec {
    Value(f64),
    /// `c / n`
    COverN { c_over_n: f64 },
    /// `(ln n)^k / n`
    LogPowOverN { log_pow_over_n: f64 },
}

impl ProbabilitySpec {
    pub fn resolve(&self, n: usize) -> f64 {
        let nf = n as f64;
        match *self {
            ProbabilitySpec::Value(p) => p,
            ProbabilitySpec::COverN { c_over_n } => c_over_n / nf,
            ProbabilitySpec::LogPowOverN { log_pow_over_n } => nf.ln().powf(log_pow_over_n) / nf,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetRule {
    Fixed(u32),
    /// `ceil(factor * n / (2 log_b(np)))`
    PredictedTimes(f64),
}

impl BudgetRule {
    pub fn resolve(&self, n: usize, p: f64) -> Result<u32, ExperimentError> {
        match *self {
            BudgetRule::Fixed(k) => Ok(k),
            BudgetRule::PredictedTimes(f) => {
                let k0 = k0_asymptotic(n as f64, p).map_err(|e| ExperimentError::Config(e.to_string()))?;
                Ok((f * n as f64 / k0).ceil() as u32)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub csv: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    /// Adds per-trial wall time to the rows, which makes output
    /// nondeterministic.
    pub wall_time: bool,
}

/// One experiment: `trials` independent graphs `G(n, p)`, one game each.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub version: u32,
    pub n: usize,
    pub p: ProbabilitySpec,
    pub trials: usize,
    pub master_seed: u64,
    pub budget: BudgetRule,
    pub painter: String,
    pub corrector: String,
    #[serde(default)]
    pub params: StrategyParams,
    #[serde(default)]
    pub output: OutputConfig,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, ExperimentError> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ExperimentError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ExperimentError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: String| Err(ExperimentError::Config(m));
        if self.version != CONFIG_VERSION {
            return bad(format!("unsupported config version {}, expected {CONFIG_VERSION}", self.version));
        }
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        let p = self.p.resolve(self.n);
        if !(p > 0.0 && p < 1.0) {
            return bad(format!("p resolves to {p}, outside (0,1)"));
        }
        if let BudgetRule::PredictedTimes(f) = self.budget {
            if !(f > 0.0) {
                return bad(format!("budget factor must be positive, got {f}"));
            }
        }
        self.budget.resolve(self.n, p)?;
        self.params.validate().map_err(|e| ExperimentError::Config(e.to_string()))?;
        check_corrector_name(&self.corrector).map_err(|e| ExperimentError::Config(e.to_string()))?;
        check_painter_name(&self.painter).map_err(|e| ExperimentError::Config(e.to_string()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
version = 1
n = 4096
p = 0.5
trials = 3
master_seed = 7
budget = { predicted_times = 2.5 }
painter = "full-set"
corrector = "dense"

[params]
strict = false

[output]
csv = "rows.csv"
"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = ExperimentConfig::from_toml(SAMPLE).unwrap();
        assert_eq!(cfg.budget, BudgetRule::PredictedTimes(2.5));
        assert_eq!(cfg.p, ProbabilitySpec::Value(0.5));
        assert_eq!(cfg.output.csv.as_deref(), Some(Path::new("rows.csv")));
        let again = ExperimentConfig::from_toml(&cfg.to_toml()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn probability_forms() {
        let c: ExperimentConfig =
            toml::from_str(&SAMPLE.replace("p = 0.5", "p = { c_over_n = 0.5 }")).unwrap();
        assert_eq!(c.p.resolve(1000), 0.0005);
        let l: ExperimentConfig =
            toml::from_str(&SAMPLE.replace("p = 0.5", "p = { log_pow_over_n = 3.0 }")).unwrap();
        assert!((l.p.resolve(1000) - 1000f64.ln().powi(3) / 1000.0).abs() < 1e-15);
    }

    #[test]
    fn budget_rules() {
        assert_eq!(BudgetRule::Fixed(2).resolve(3000, 0.5 / 3000.0).unwrap(), 2);
        assert_eq!(BudgetRule::PredictedTimes(2.5).resolve(16384, 0.5).unwrap(), 1576);
        assert!(BudgetRule::PredictedTimes(1.0).resolve(100, 0.005).is_err());
    }

    #[test]
    fn rejects_bad_configs() {
        for (from, to) in [
            ("version = 1", "version = 2"),
            ("trials = 3", "trials = 0"),
            ("\"dense\"", "\"greedy\""),
            ("\"full-set\"", "\"random:7\""),
            ("p = 0.5", "p = 1.5"),
            ("predicted_times = 2.5", "predicted_times = -1.0"),
            ("strict = false", "stritc = false"),
        ] {
            assert!(ExperimentConfig::from_toml(&SAMPLE.replace(from, to)).is_err(), "{to}");
        }
    }
}
