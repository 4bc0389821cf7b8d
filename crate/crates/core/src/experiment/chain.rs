use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::exact::{choice_number, chromatic_number, paintability, SolverConfig};
use crate::graph::{complete, complete_bipartite, cycle, gnp, path, Graph, Vertex};
use crate::rng::stream_rng;
use crate::theory::chain_bounds;

const BOUND_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainRow {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub chi: usize,
    /// Absent when the graph is beyond the choosability caps.
    pub chi_list: Option<usize>,
    pub chi_paint: usize,
    pub upper: f64,
    pub ok: bool,
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub rows: Vec<ChainRow>,
    pub violations: Vec<ChainRow>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn fixtures(cap: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=cap.min(6) {
        out.push((format!("K{n}"), complete(n)));
    }
    for n in 1..=cap.min(9) {
        out.push((format!("P{n}"), path(n)));
    }
    for n in 3..=cap.min(9) {
        out.push((format!("C{n}"), cycle(n)));
    }
    for a in 1..=cap / 2 {
        for b in a..=cap - a {
            out.push((format!("K{a},{b}"), complete_bipartite(a, b)));
        }
    }
    out
}

fn row(name: String, g: &Graph, cfg: &SolverConfig) -> Result<ChainRow, ExperimentError> {
    let n = g.n();
    let chi = chromatic_number(g, cfg)?;
    let chi_paint = paintability(g, cfg)?;
    let chi_list = choice_number(g, cfg).ok();
    let (_, upper) = chain_bounds(chi, n);
    let ok = chi <= chi_paint
        && chi_paint as f64 <= upper + BOUND_TOL
        && chi_list.is_none_or(|l| chi <= l && l <= chi_paint);
    Ok(ChainRow { name, n, m: g.edge_count(), chi, chi_list, chi_paint, upper, ok, edges: g.edges() })
}

/// Checks `chi <= chi_L <= chi_P <= chi ln n + 1` on the named families
/// (complete graphs up to 6 vertices, paths and cycles up to 9, complete
/// bipartite graphs up to the paint cap) and on `samples` random graphs with
/// `1..=n_max` vertices and edge probability in `[0.1, 0.9)`.
pub fn chain_check(n_max: usize, samples: usize, seed: u64, cfg: &SolverConfig) -> Result<ChainReport, ExperimentError> {
    let cap = cfg.paint_max_n;
    if n_max == 0 || n_max > cap {
        return Err(ExperimentError::Config(format!("n_max = {n_max} must lie in 1..={cap}")));
    }
    let mut graphs = fixtures(cap);
    let mut rng = stream_rng(seed, 0);
    for i in 0..samples {
        let n = rng.gen_range(1..=n_max);
        let p = rng.gen_range(0.1..0.9);
        graphs.push((format!("random{i}"), gnp(n, p, rng.gen())?));
    }
    let mut rows = Vec::with_capacity(graphs.len());
    for (name, g) in graphs {
        rows.push(row(name, &g, cfg)?);
    }
    let violations = rows.iter().filter(|r| !r.ok).cloned().collect();
    Ok(ChainReport { rows, violations })
}
