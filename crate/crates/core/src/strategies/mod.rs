//! Corrector and painter strategies, and the name registry used by the CLI
//! and experiment configs.

mod painters;
mod peeling;
mod randomized;
mod registry;
mod very_sparse;

pub use painters::{read_lists, FullSetPainter, ListAdversaryPainter, LowEraserPainter, RandomPainter};
pub use peeling::{tree_corrector, unicyclic_corrector, PeelingCorrector};
pub use randomized::{DenseCorrector, MaximalIsCorrector, SparseCorrector};
pub use registry::{
    check_corrector_name, check_painter_name, corrector_by_name, painter_by_name, CORRECTOR_NAMES, PAINTER_NAMES,
};
pub use very_sparse::VerySparseCorrector;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error)]
pub enum StrategyError {
    #[error("invalid strategy parameter: {0}")]
    Param(String),
    #[error("unknown strategy {0:?}")]
    UnknownName(String),
    #[error("graph not supported by this strategy: {0}")]
    Graph(String),
    #[error("cannot read list file: {0}")]
    ListFile(String),
    #[error(transparent)]
    Solver(#[from] crate::exact::SolverError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Dense,
    Sparse,
    VerySparse,
}

/// Knobs shared by the randomized correctors. `None` fields take
/// graph-dependent defaults when a strategy is built.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StrategyParams {
    pub omega: Option<f64>,
    pub epsilon: f64,
    pub c: Option<f64>,
    pub degree_threshold: Option<usize>,
    pub extraction_attempts: usize,
    pub regime: Regime,
    /// Edge probability; estimated from the edge density when absent.
    pub p: Option<f64>,
    /// Skip the maximality extension and play the selection rule verbatim.
    pub strict: bool,
    /// Redraw the group or type when the drawn class is empty.
    pub redraw_empty: bool,
}

impl Default for StrategyParams {
    fn default() -> Self {
        StrategyParams {
            omega: None,
            epsilon: 0.1,
            c: None,
            degree_threshold: None,
            extraction_attempts: crate::indset::DEFAULT_EXTRACTION_ATTEMPTS,
            regime: Regime::Dense,
            p: None,
            strict: false,
            redraw_empty: false,
        }
    }
}

impl StrategyParams {
    pub fn validate(&self) -> Result<(), StrategyError> {
        let bad = |m: String| Err(StrategyError::Param(m));
        if let Some(w) = self.omega {
            if !(w > 0.0) {
                return bad(format!("omega must be positive, got {w}"));
            }
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return bad(format!("epsilon must lie in (0,1), got {}", self.epsilon));
        }
        if let Some(c) = self.c {
            if !(c >= 0.99) {
                return bad(format!("c must be at least 0.99, got {c}"));
            }
        }
        if let Some(p) = self.p {
            if !(p > 0.0 && p < 1.0) {
                return bad(format!("p must lie in (0,1), got {p}"));
            }
        }
        if self.extraction_attempts == 0 {
            return bad("extraction_attempts must be at least 1".into());
        }
        Ok(())
    }

    /// Given `p`, or the edge density clamped into `(0,1)`.
    pub fn resolve_p(&self, g: &Graph) -> f64 {
        if let Some(p) = self.p {
            return p;
        }
        let n = g.n() as f64;
        let pairs = (n * (n - 1.0) / 2.0).max(1.0);
        (g.edge_count() as f64 / pairs).clamp(1.0 / (n * n).max(4.0), 1.0 - 1e-9)
    }

    /// The regime default: `max(1.5, ln ln n)` when dense, `ln ln n` otherwise
    /// (1 when that is not positive).
    pub fn resolve_omega(&self, n: usize) -> f64 {
        if let Some(w) = self.omega {
            return w;
        }
        let lnln = (n as f64).ln().ln();
        match self.regime {
            Regime::Dense => lnln.max(1.5),
            _ if lnln > 0.0 => lnln,
            _ => 1.0,
        }
    }

    /// `c = max(0.99, np)`.
    pub fn resolve_c(&self, n: usize, p: f64) -> f64 {
        self.c.unwrap_or((n as f64 * p).max(0.99))
    }

    /// `100 c^2` unless overridden.
    pub fn resolve_degree_threshold(&self, n: usize, p: f64) -> usize {
        self.degree_threshold.unwrap_or_else(|| {
            let c = self.resolve_c(n, p);
            (100.0 * c * c).ceil() as usize
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SetClass {
    Small,
    Medium,
    Large,
}

/// Large iff `s >= n/(omega ln^2 n)`, else Small iff `s <= np/(omega ln^2 n)`,
/// else Medium. Boundaries are compared with a relative slack of `1e-12` so
/// that a threshold landing on an integer is hit despite rounding.
pub fn classify_set(s: usize, n: usize, p: f64, omega: f64) -> SetClass {
    const SLACK: f64 = 1e-12;
    let ln_n = (n as f64).ln();
    let large = n as f64 / (omega * ln_n * ln_n);
    let s = s as f64;
    if s >= large * (1.0 - SLACK) {
        SetClass::Large
    } else if s <= p * large * (1.0 + SLACK) {
        SetClass::Small
    } else {
        SetClass::Medium
    }
}

/// Builds the kept set: the forced vertices, then every anchor vertex
/// compatible with them, then (unless `strict`) a greedy extension to a
/// maximal independent subset of `presented` in the given scan order.
pub(crate) fn finish_keep(
    g: &Graph,
    presented: &[Vertex],
    forced: &[Vertex],
    anchor: &[Vertex],
    strict: bool,
) -> Vec<Vertex> {
    let mut keep: Vec<Vertex> = Vec::with_capacity(anchor.len() + forced.len());
    if g.is_hashed() {
        for &v in forced.iter().chain(anchor) {
            if !keep.contains(&v) && keep.iter().all(|&u| !g.has_edge(u, v)) {
                keep.push(v);
            }
        }
        if !strict {
            for &v in presented {
                if !keep.contains(&v) && keep.iter().all(|&u| !g.has_edge(u, v)) {
                    keep.push(v);
                }
            }
        }
        return keep;
    }
    let mut free = FixedBitSet::with_capacity(g.n());
    for &v in presented {
        free.insert(v);
    }
    let mut take = |v: Vertex, keep: &mut Vec<Vertex>| {
        if free.contains(v) {
            keep.push(v);
            free.set(v, false);
            g.remove_neighbors_from(v, &mut free);
        }
    };
    for &v in forced.iter().chain(anchor) {
        take(v, &mut keep);
    }
    if !strict {
        for &v in presented {
            take(v, &mut keep);
        }
    }
    keep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path};

    #[test]
    fn classify_examples() {
        let (n, p, omega) = (10_000, 0.5, 2.0);
        let ln2 = (n as f64).ln().powi(2);
        let large = n as f64 / (omega * ln2);
        assert_eq!(classify_set(n, n, p, omega), SetClass::Large);
        assert_eq!(classify_set(1, n, p, omega), SetClass::Small);
        assert_eq!(classify_set(large.ceil() as usize, n, p, omega), SetClass::Large);
        assert_eq!(classify_set(large.floor() as usize, n, p, omega), SetClass::Medium);
        // A threshold that is an exact integer: n/(omega ln^2 n) = 50.
        let omega = n as f64 / (50.0 * ln2);
        assert_eq!(classify_set(50, n, p, omega), SetClass::Large);
        assert_eq!(classify_set(49, n, p, omega), SetClass::Medium);
        assert_eq!(classify_set(25, n, p, omega), SetClass::Small);
    }

    #[test]
    fn params_validate() {
        assert!(StrategyParams::default().validate().is_ok());
        let bad = [
            StrategyParams { omega: Some(0.0), ..Default::default() },
            StrategyParams { epsilon: 1.0, ..Default::default() },
            StrategyParams { c: Some(0.5), ..Default::default() },
            StrategyParams { p: Some(1.0), ..Default::default() },
            StrategyParams { extraction_attempts: 0, ..Default::default() },
        ];
        for b in bad {
            assert!(b.validate().is_err(), "{b:?}");
        }
    }

    #[test]
    fn params_defaults() {
        let d = StrategyParams::default();
        assert_eq!(d.resolve_omega(50), 1.5);
        let s = StrategyParams { regime: Regime::Sparse, ..Default::default() };
        assert!((s.resolve_omega(100_000) - (100_000f64).ln().ln()).abs() < 1e-12);
        assert_eq!(d.resolve_degree_threshold(1000, 0.0005), 99);
        assert_eq!(d.resolve_degree_threshold(1000, 0.002), 400);
        let g = cycle(5);
        assert!((d.resolve_p(&g) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn finish_keep_extends_and_respects_forced() {
        let g = path(5);
        let all = [0, 1, 2, 3, 4];
        assert_eq!(finish_keep(&g, &all, &[], &[1], false), vec![1, 3]);
        assert_eq!(finish_keep(&g, &all, &[], &[1], true), vec![1]);
        assert_eq!(finish_keep(&g, &all, &[2], &[1, 4], false), vec![2, 4, 0]);
    }
}
