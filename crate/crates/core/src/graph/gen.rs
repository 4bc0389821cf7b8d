//! Seeded binomial random graphs.
//!
//! For `p >= DENSE_METHOD_MIN_P` every pair `{u, v}` is an independent
//! Bernoulli trial decided by `pair_hash(seed, u, v) < p * 2^64`, stored as a
//! bit matrix. [`gnp_hashed`] uses the same rule without materializing, so for
//! those densities both constructors describe the same graph.
//!
//! Below the switch, pairs in lexicographic order are visited by geometric
//! skipping driven by `stream_rng(seed, 0)`; cost is O(n + m).

use fixedbitset::FixedBitSet;
use rand::Rng as _;

use super::{Graph, GraphError};
use crate::rng::{bernoulli_threshold, pair_hash, stream_rng};

pub const DENSE_METHOD_MIN_P: f64 = 0.05;

fn check_p(p: f64) -> Result<(), GraphError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GraphError::Probability(p))
    }
}

pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    check_p(p)?;
    if p == 0.0 {
        return Ok(Graph::empty(n));
    }
    if p >= DENSE_METHOD_MIN_P {
        let threshold = bernoulli_threshold(p);
        let complete = p >= 1.0;
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for u in 0..n {
            for v in u + 1..n {
                if complete || pair_hash(seed, u, v) < threshold {
                    rows[u].insert(v);
                    rows[v].insert(u);
                }
            }
        }
        return Ok(Graph::from_matrix(rows));
    }
    Ok(Graph::from_lists(geometric_lists(n, p, seed)))
}

/// Lazily evaluated `G(n,p)`; see the module docs.
pub fn gnp_hashed(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    check_p(p)?;
    Ok(Graph::hashed(n, seed, bernoulli_threshold(p), p >= 1.0))
}

fn geometric_lists(n: usize, p: f64, seed: u64) -> Vec<Vec<u32>> {
    let mut rng = stream_rng(seed, 0);
    let mut lists = vec![Vec::new(); n];
    let log_q = (1.0 - p).ln();
    // Pair (v, w) with w < v; walk row by row.
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.gen();
        let skip = ((1.0 - r).ln() / log_q).floor();
        if !skip.is_finite() || skip > (n as f64) * (n as f64) {
            break;
        }
        w += 1 + skip as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            lists[v].push(w as u32);
            lists[w as usize].push(v as u32);
        }
    }
    for l in &mut lists {
        l.sort_unstable();
    }
    lists
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extreme_probabilities() {
        let g = gnp(5, 0.0, 9).unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 0));
        let k4 = gnp(4, 1.0, 9).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(gnp_hashed(4, 1.0, 1).unwrap().edge_count(), 6);
        assert!(matches!(gnp(3, 1.5, 0), Err(GraphError::Probability(_))));
        assert!(matches!(gnp(3, -0.1, 0), Err(GraphError::Probability(_))));
    }

    #[test]
    fn deterministic_per_seed() {
        for p in [0.01, 0.3] {
            let a = gnp(400, p, 77).unwrap();
            let b = gnp(400, p, 77).unwrap();
            let c = gnp(400, p, 78).unwrap();
            assert!(a.same_edges(&b));
            assert!(!a.same_edges(&c));
        }
    }

    #[test]
    fn dense_edge_count_fixture() {
        // Binomial(499500, 1/2): mean 249750, sd ~353.5; window is 4 sd.
        let m = gnp(1000, 0.5, 42).unwrap().edge_count();
        let sd = (249_750.0f64).sqrt() * 0.5;
        assert!(((m as f64) - 249_750.0).abs() < 4.0 * sd, "m = {m}");
        assert_eq!(m, 250_278);
    }

    #[test]
    fn sparse_edge_count_is_plausible() {
        let n = 20_000;
        let p = 0.001;
        let m = gnp(n, p, 3).unwrap().edge_count() as f64;
        let pairs = (n * (n - 1) / 2) as f64;
        let mean = pairs * p;
        let sd = (pairs * p * (1.0 - p)).sqrt();
        assert!((m - mean).abs() < 4.0 * sd, "m = {m}, mean = {mean}");
    }

    #[test]
    fn sparse_method_has_no_duplicates_or_loops() {
        let g = gnp(500, 0.02, 1).unwrap();
        for v in 0..500 {
            let nb: Vec<_> = g.neighbors(v).collect();
            assert!(nb.windows(2).all(|w| w[0] < w[1]));
            assert!(!nb.contains(&v));
            for &u in &nb {
                assert!(g.has_edge(u, v));
            }
        }
    }
}
