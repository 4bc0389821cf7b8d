//! Exact game values for small graphs: chromatic number, choosability and
//! paintability, plus solver-backed players.
//!
//! Paintability positions are `(remaining mask, eraser vector)` pairs, so
//! everything here works on `u16` vertex masks.

mod adversary;
mod choose;
mod paint;
mod players;

pub use adversary::{find_painter_win, StateKey};
pub use choose::{choice_number, choosability_witness, is_choosable, list_colourable};
pub use paint::{is_paintable, paintability, PaintSolver};
pub use players::{OptimalPainter, SolverCorrector};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub paint_max_n: usize,
    pub choose_max_n: usize,
    pub choose_max_k: usize,
    pub chromatic_max_n: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { paint_max_n: 10, choose_max_n: 6, choose_max_k: 3, chromatic_max_n: 20 }
    }
}

/// Masks are `u16` and eraser counts are packed in 4 bits.
pub const PAINT_HARD_CAP: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("{what} is capped at {cap} vertices, graph has {n}")]
    TooManyVertices { what: &'static str, n: usize, cap: usize },
    #[error("choosability is capped at list size {cap}, asked for {k}")]
    ListSizeTooLarge { k: usize, cap: usize },
    #[error("eraser vector has length {got}, graph has {n} vertices")]
    EraserLength { got: usize, n: usize },
    #[error("the corrector wins this position; no winning painter exists")]
    Paintable,
}

pub(crate) fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<(), SolverError> {
    if n > cap {
        Err(SolverError::TooManyVertices { what, n, cap })
    } else {
        Ok(())
    }
}

/// Iterates the set bits of a mask, lowest first.
pub(crate) fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

pub(crate) fn small_adjacency(g: &Graph) -> Vec<u32> {
    g.adjacency_masks().into_iter().map(|m| m as u32).collect()
}

/// Smallest `k` such that `g` has a proper `k`-colouring (0 for the empty graph).
pub fn chromatic_number(g: &Graph, cfg: &SolverConfig) -> Result<usize, SolverError> {
    let n = g.n();
    check_cap("chromatic number", n, cfg.chromatic_max_n.min(32))?;
    if n == 0 {
        return Ok(0);
    }
    let adj = small_adjacency(g);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].count_ones()));
    let upper = g.greedy_colouring(&order).expect("order is a permutation").count;
    let mut colours = vec![usize::MAX; n];
    for k in 1..upper {
        if colour_with(&adj, &order, 0, k, 0, &mut colours) {
            return Ok(k);
        }
    }
    Ok(upper)
}

fn colour_with(adj: &[u32], order: &[usize], i: usize, k: usize, used: usize, colours: &mut [usize]) -> bool {
    let Some(&v) = order.get(i) else { return true };
    // New colours are introduced in order, which removes colour symmetry.
    for c in 0..k.min(used + 1) {
        if bits(adj[v]).all(|u| colours[u] != c) {
            colours[v] = c;
            if colour_with(adj, order, i + 1, k, used.max(c + 1), colours) {
                return true;
            }
        }
    }
    colours[v] = usize::MAX;
    false
}

/// Largest minimum degree over all subgraphs.
pub fn degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| deg[v]).expect("a vertex is alive");
        best = best.max(deg[v]);
        alive[v] = false;
        for u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, path, petersen};

    /// Oracle: try every assignment of k colours.
    fn colourable_brute(g: &Graph, k: usize) -> bool {
        let n = g.n();
        let edges = g.edges();
        let total = k.pow(n as u32);
        (0..total).any(|mut code| {
            let mut col = vec![0; n];
            for c in col.iter_mut() {
                *c = code % k;
                code /= k;
            }
            edges.iter().all(|&(u, v)| col[u] != col[v])
        })
    }

    #[test]
    fn chromatic_examples() {
        let cfg = SolverConfig::default();
        assert_eq!(chromatic_number(&complete(4), &cfg), Ok(4));
        assert_eq!(chromatic_number(&cycle(5), &cfg), Ok(3));
        assert_eq!(chromatic_number(&cycle(6), &cfg), Ok(2));
        assert_eq!(chromatic_number(&Graph::empty(3), &cfg), Ok(1));
        assert_eq!(chromatic_number(&Graph::empty(0), &cfg), Ok(0));
        let pet = petersen();
        assert_eq!(chromatic_number(&pet, &cfg), Ok(3));
        assert!(colourable_brute(&pet, 3) && !colourable_brute(&pet, 2));
    }

    #[test]
    fn chromatic_cap() {
        let cfg = SolverConfig { chromatic_max_n: 5, ..SolverConfig::default() };
        assert_eq!(
            chromatic_number(&path(6), &cfg),
            Err(SolverError::TooManyVertices { what: "chromatic number", n: 6, cap: 5 })
        );
    }

    #[test]
    fn chromatic_matches_brute_force_on_random_graphs() {
        let cfg = SolverConfig::default();
        for seed in 0..60 {
            let g = crate::graph::gnp(7, 0.45, seed).unwrap();
            let chi = chromatic_number(&g, &cfg).unwrap();
            assert!(colourable_brute(&g, chi));
            assert!(chi == 1 || !colourable_brute(&g, chi - 1), "seed {seed}");
        }
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy(&path(5)), 1);
        assert_eq!(degeneracy(&cycle(5)), 2);
        assert_eq!(degeneracy(&complete(5)), 4);
        assert_eq!(degeneracy(&complete_bipartite(2, 4)), 2);
        assert_eq!(degeneracy(&petersen()), 3);
    }
}
