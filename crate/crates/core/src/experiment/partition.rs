use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use super::{ExperimentError, MATRIX_MAX_N};
use crate::graph::{gnp, gnp_hashed, Graph, Vertex};
use crate::indset::{find_independent_of_size, medium_partition_dense, medium_partition_typed, part_size, s0};
use crate::rng::{derive_seed, stream_rng};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionVerdict {
    pub n: usize,
    pub p: f64,
    pub omega: f64,
    pub invocations: usize,
    /// Invariant failures, one message per failing output.
    pub violations: Vec<String>,
    /// Outputs flagged as stopping early.
    pub dense_fallbacks: usize,
    pub typed_fallbacks: usize,
    /// Extractions of `ceil(1/(9p))` independent vertices from random sets of
    /// size at least `s0`, and how many fell short.
    pub extraction_checks: usize,
    pub extraction_fallbacks: usize,
}

impl PartitionVerdict {
    pub fn extraction_fallback_rate(&self) -> f64 {
        if self.extraction_checks == 0 {
            0.0
        } else {
            self.extraction_fallbacks as f64 / self.extraction_checks as f64
        }
    }
}

fn graph_for(n: usize, p: f64, seed: u64) -> Result<Graph, ExperimentError> {
    Ok(if n > MATRIX_MAX_N { gnp_hashed(n, p, seed)? } else { gnp(n, p, seed)? })
}

fn random_set<R: rand::Rng>(n: usize, lo: usize, hi: usize, rng: &mut R) -> Vec<Vertex> {
    let size = rng.gen_range(lo.clamp(1, n)..=hi.clamp(1, n));
    let mut set = sample(rng, n, size).into_vec();
    set.sort_unstable();
    set
}

/// Runs both partitioners `invocations` times on random subsets of one
/// `G(n,p)` (sizes between `s0/4` and `3 s0`) and checks every output, then
/// samples as many sets of size in `[s0, 2 s0]` and tries to extract a
/// fixed-size independent part from each.
pub fn verify_partitions(
    n: usize,
    p: f64,
    omega: f64,
    invocations: usize,
    attempts: usize,
    seed: u64,
) -> Result<PartitionVerdict, ExperimentError> {
    if !(p > 0.0 && p < 1.0) || n < 2 || !(omega > 0.0) || attempts == 0 {
        return Err(ExperimentError::Config(format!("bad partition check parameters n={n} p={p} omega={omega}")));
    }
    let g = graph_for(n, p, derive_seed(seed, 0))?;
    let mut rng = stream_rng(derive_seed(seed, 1), 0);
    let s = s0(n, p);
    let mut verdict = PartitionVerdict {
        n,
        p,
        omega,
        invocations,
        violations: Vec::new(),
        dense_fallbacks: 0,
        typed_fallbacks: 0,
        extraction_checks: 0,
        extraction_fallbacks: 0,
    };
    for i in 0..invocations {
        let set = random_set(n, (s / 4.0) as usize, (3.0 * s) as usize, &mut rng);
        let dense = medium_partition_dense(&g, &set, p, attempts, &mut rng);
        if let Err(e) = dense.check(&g, &set, p) {
            verdict.violations.push(format!("dense #{i}: {e}"));
        }
        verdict.dense_fallbacks += dense.fallback as usize;
        let typed = medium_partition_typed(&g, &set, p, omega, attempts, &mut rng);
        if let Err(e) = typed.check(&g, &set, p) {
            verdict.violations.push(format!("typed #{i}: {e}"));
        }
        verdict.typed_fallbacks += typed.fallback as usize;
    }
    let target = part_size(0, p);
    for _ in 0..invocations {
        let set = random_set(n, s.ceil() as usize, (2.0 * s) as usize, &mut rng);
        if set.len() as f64 >= s {
            let (_, report) = find_independent_of_size(&g, &set, target, attempts, &mut rng);
            verdict.extraction_checks += 1;
            verdict.extraction_fallbacks += report.fallback as usize;
        }
    }
    Ok(verdict)
}
