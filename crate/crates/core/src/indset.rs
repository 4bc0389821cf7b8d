//! Independent-set machinery for the randomized correctors: the `k0`
//! threshold, seeded greedy extraction with restarts, and the medium-set
//! partitioners (fixed-size parts, then dyadic typed parts).
//!
//! All logarithms are natural.

use fixedbitset::FixedBitSet;
use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub const DEFAULT_EXTRACTION_ATTEMPTS: usize = 50;

#[derive(Debug, Error, PartialEq)]
pub enum IndsetError {
    #[error("probability {0} must lie strictly between 0 and 1")]
    Probability(f64),
    #[error("vertex count must be positive")]
    EmptyGraph,
    #[error("type weights need at least one type")]
    NoTypes,
}

/// `ceil` that ignores floating-point noise just above an integer.
pub(crate) fn ceil_tol(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.ceil() as usize
    }
}

fn check_open_p(p: f64) -> Result<(), IndsetError> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(IndsetError::Probability(p))
    }
}

/// `ln C(n,k) + C(k,2) ln(1-p) - 4 ln n`: nonnegative iff `k` satisfies the
/// defining inequality of `k0`.
pub fn k0_margin(n: usize, p: f64, k: usize) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    let ln_binom = ln_gamma(nf + 1.0) - ln_gamma(kf + 1.0) - ln_gamma(nf - kf + 1.0);
    ln_binom + kf * (kf - 1.0) / 2.0 * (1.0 - p).ln() - 4.0 * nf.ln()
}

/// Largest `k` in `1..=n` with `C(n,k) (1-p)^C(k,2) >= n^4`, or `None` when
/// no such `k` exists (typical for small `n`).
pub fn k0(n: usize, p: f64) -> Result<Option<usize>, IndsetError> {
    check_open_p(p)?;
    if n == 0 {
        return Err(IndsetError::EmptyGraph);
    }
    // The margin is concave in k: stop once it is negative and falling.
    let mut best = None;
    let mut prev = f64::NEG_INFINITY;
    for k in 1..=n {
        let m = k0_margin(n, p, k);
        if m >= 0.0 {
            best = Some(k);
        } else if m < prev {
            break;
        }
        prev = m;
    }
    Ok(best)
}

/// Greedy scan of `set` in a seeded random order (lazy Fisher–Yates), keeping
/// each vertex with no previously kept neighbour. Stops after `limit` picks.
fn greedy_scan<R: Rng + ?Sized>(g: &Graph, set: &[Vertex], rng: &mut R, limit: usize) -> Vec<Vertex> {
    let mut order = set.to_vec();
    let mut chosen = Vec::new();
    if limit == 0 {
        return chosen;
    }
    let len = order.len();
    if g.is_hashed() {
        for i in 0..len {
            let j = rng.gen_range(i..len);
            order.swap(i, j);
            let v = order[i];
            if chosen.iter().all(|&u| !g.has_edge(u, v)) {
                chosen.push(v);
                if chosen.len() == limit {
                    break;
                }
            }
        }
        return chosen;
    }
    let mut candidates = FixedBitSet::with_capacity(g.n());
    for &v in set {
        candidates.insert(v);
    }
    for i in 0..len {
        let j = rng.gen_range(i..len);
        order.swap(i, j);
        let v = order[i];
        if candidates.contains(v) {
            chosen.push(v);
            if chosen.len() == limit {
                break;
            }
            g.remove_neighbors_from(v, &mut candidates);
        }
    }
    chosen
}

/// A maximal independent subset of `set`, built by scanning `set` in a
/// seeded random order.
pub fn greedy_independent_set<R: Rng + ?Sized>(g: &Graph, set: &[Vertex], rng: &mut R) -> Vec<Vertex> {
    greedy_scan(g, set, rng, usize::MAX)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionReport {
    pub requested: usize,
    pub achieved: usize,
    pub attempts: usize,
    pub fallback: bool,
}

/// Up to `max_attempts` greedy restarts; returns the first independent set
/// reaching `target` (its first `target` vertices in scan order), or else the
/// largest one found with the fallback flag set.
pub fn find_independent_of_size<R: Rng + ?Sized>(
    g: &Graph,
    set: &[Vertex],
    target: usize,
    max_attempts: usize,
    rng: &mut R,
) -> (Vec<Vertex>, ExtractionReport) {
    let mut best: Vec<Vertex> = Vec::new();
    let attempts = max_attempts.max(1);
    for attempt in 1..=attempts {
        let found = greedy_scan(g, set, rng, target);
        if found.len() >= target {
            let report = ExtractionReport { requested: target, achieved: found.len(), attempts: attempt, fallback: false };
            return (found, report);
        }
        if found.len() > best.len() {
            best = found;
        }
        if best.len() == set.len() {
            break;
        }
    }
    let report = ExtractionReport { requested: target, achieved: best.len(), attempts, fallback: true };
    (best, report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub vertices: Vec<Vertex>,
    /// 0 for the fixed-size parts, `i >= 1` for dyadic scale `i`.
    pub kind: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    pub parts: Vec<Part>,
    pub leftover: Vec<Vertex>,
    /// Largest type index among the parts (0 if none).
    pub max_type: usize,
    pub s0: f64,
    /// Extraction failed, or the type cap was hit, before the regular
    /// stopping rule applied; the rest went to `leftover`.
    pub fallback: bool,
}

impl Partition {
    pub fn parts_of_type(&self, kind: usize) -> impl Iterator<Item = &Part> {
        self.parts.iter().filter(move |p| p.kind == kind)
    }

    /// Checks cover, disjointness, independence, exact typed sizes and the
    /// type cap against the input set.
    pub fn check(&self, g: &Graph, set: &[Vertex], p: f64) -> Result<(), String> {
        let n = g.n();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut total = 0;
        for v in self.parts.iter().flat_map(|p| &p.vertices).chain(&self.leftover) {
            if *v >= n || seen.put(*v) {
                return Err(format!("vertex {v} repeated or out of range"));
            }
            total += 1;
        }
        if total != set.len() || set.iter().any(|&v| !seen.contains(v)) {
            return Err("parts and leftover do not cover the input set exactly".into());
        }
        let cap = type_cap(n);
        for (i, part) in self.parts.iter().enumerate() {
            if !g.is_independent_unchecked(&part.vertices) {
                return Err(format!("part {i} is not independent"));
            }
            if part.kind > cap {
                return Err(format!("part {i} has type {} above the cap {cap}", part.kind));
            }
            let want = part_size(part.kind, p);
            if part.vertices.len() != want {
                return Err(format!("part {i} of type {} has size {}, expected {want}", part.kind, part.vertices.len()));
            }
        }
        let max = self.parts.iter().map(|p| p.kind).max().unwrap_or(0);
        if max != self.max_type {
            return Err(format!("recorded max type {} but parts reach {max}", self.max_type));
        }
        Ok(())
    }
}

/// `10 ln n / p`.
pub fn s0(n: usize, p: f64) -> f64 {
    10.0 * (n as f64).ln() / p
}

/// Size of a type-`kind` part: `ceil(1/(9p))` for type 0, `ceil(i/(9p 2^i))` for type `i`.
pub fn part_size(kind: usize, p: f64) -> usize {
    if kind == 0 {
        ceil_tol(1.0 / (9.0 * p))
    } else {
        let i = kind as f64;
        ceil_tol(i / (9.0 * p * 2f64.powi(kind as i32)))
    }
}

/// `floor(ln n / ln 2)`: the largest admissible type index.
pub fn type_cap(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        ((n as f64).ln() / std::f64::consts::LN_2 + 1e-12).floor() as usize
    }
}

/// Unique `i >= 1` with `2^-i s0 <= r < 2^(1-i) s0`, for `0 < r < s0`.
pub fn dyadic_type(r: usize, s0: f64) -> usize {
    let r = r as f64;
    debug_assert!(r > 0.0 && r < s0);
    let mut i = 1;
    while s0 / 2f64.powi(i as i32) > r {
        i += 1;
    }
    i
}

fn take_part(remaining: &mut Vec<Vertex>, part: &[Vertex], n: usize) {
    let mut mark = FixedBitSet::with_capacity(n);
    for &v in part {
        mark.insert(v);
    }
    remaining.retain(|&v| !mark.contains(v));
}

/// Phase 1 shared by both partitioners: fixed-size parts while at least `s0`
/// vertices remain. Returns `false` if an extraction failed.
fn extract_fixed_parts<R: Rng + ?Sized>(
    g: &Graph,
    remaining: &mut Vec<Vertex>,
    parts: &mut Vec<Part>,
    p: f64,
    s0: f64,
    attempts: usize,
    rng: &mut R,
) -> bool {
    let size = part_size(0, p);
    while remaining.len() as f64 >= s0 {
        let (found, report) = find_independent_of_size(g, remaining, size, attempts, rng);
        if report.fallback {
            return false;
        }
        take_part(remaining, &found, g.n());
        parts.push(Part { vertices: found, kind: 0 });
    }
    true
}

/// Splits `set` into independent parts of size `ceil(1/(9p))` while at least
/// `s0 = 10 ln n / p` vertices remain; the rest becomes the leftover.
pub fn medium_partition_dense<R: Rng + ?Sized>(
    g: &Graph,
    set: &[Vertex],
    p: f64,
    attempts: usize,
    rng: &mut R,
) -> Partition {
    let s0 = s0(g.n(), p);
    let mut remaining = set.to_vec();
    let mut parts = Vec::new();
    let ok = extract_fixed_parts(g, &mut remaining, &mut parts, p, s0, attempts, rng);
    let partition = Partition { parts, leftover: remaining, max_type: 0, s0, fallback: !ok };
    debug_assert_eq!(partition.check(g, set, p), Ok(()));
    partition
}

/// Fixed-size parts as in [`medium_partition_dense`], then, while the
/// remainder `r` exceeds `n p / (omega ln^2 n)`, a part of size
/// `ceil(i/(9p 2^i))` where `2^-i s0 <= r < 2^(1-i) s0`.
pub fn medium_partition_typed<R: Rng + ?Sized>(
    g: &Graph,
    set: &[Vertex],
    p: f64,
    omega: f64,
    attempts: usize,
    rng: &mut R,
) -> Partition {
    let n = g.n();
    let s0 = s0(n, p);
    let ln_n = (n as f64).ln();
    let small = n as f64 * p / (omega * ln_n * ln_n);
    let cap = type_cap(n);
    let mut remaining = set.to_vec();
    let mut parts = Vec::new();
    let mut max_type = 0;
    let mut fallback = !extract_fixed_parts(g, &mut remaining, &mut parts, p, s0, attempts, rng);
    while !fallback && !remaining.is_empty() && remaining.len() as f64 > small {
        let i = dyadic_type(remaining.len(), s0);
        if i > cap {
            fallback = true;
            break;
        }
        let (found, report) = find_independent_of_size(g, &remaining, part_size(i, p), attempts, rng);
        if report.fallback {
            fallback = true;
            break;
        }
        take_part(&mut remaining, &found, n);
        parts.push(Part { vertices: found, kind: i });
        max_type = max_type.max(i);
    }
    let partition = Partition { parts, leftover: remaining, max_type, s0, fallback };
    debug_assert_eq!(partition.check(g, set, p), Ok(()));
    partition
}

/// `q_i = (1/i) / H_M` for `i = 1..=M`.
pub fn type_weights(max_type: usize) -> Result<Vec<f64>, IndsetError> {
    if max_type == 0 {
        return Err(IndsetError::NoTypes);
    }
    let harmonic: f64 = (1..=max_type).map(|j| 1.0 / j as f64).sum();
    Ok((1..=max_type).map(|i| 1.0 / i as f64 / harmonic).collect())
}
