use std::collections::HashMap;

use super::{bits, check_cap, chromatic_number, degeneracy, small_adjacency, SolverConfig, SolverError, PAINT_HARD_CAP};
use crate::graph::Graph;

const MAX_ERASERS: u32 = 15;

/// Memoized game-tree search over positions `(remaining, erasers)`.
///
/// A vertex whose eraser count is at least its degree among the remaining
/// vertices can always be coloured (erase it whenever a neighbour is kept
/// in the same round), so it is dropped before lookup. Positions split into
/// connected components, and the corrector only needs to consider maximal
/// independent responses containing every zero-eraser vertex: keeping more
/// never hurts her.
#[derive(Clone, Debug)]
pub struct PaintSolver {
    n: usize,
    adj: Vec<u32>,
    /// Painter moves for `m` remaining vertices as `m`-bit patterns,
    /// largest first, then lexicographic by vertex list.
    patterns: Vec<Vec<u32>>,
    /// `None`: the corrector wins. `Some(S)`: presenting `S` wins for the painter.
    memo: HashMap<u128, Option<u32>>,
}

type Erasers = [u8; PAINT_HARD_CAP];

impl PaintSolver {
    pub fn new(g: &Graph, cfg: &SolverConfig) -> Result<Self, SolverError> {
        let n = g.n();
        check_cap("paintability", n, cfg.paint_max_n.min(PAINT_HARD_CAP))?;
        let patterns = (0..=n)
            .map(|m| {
                let mut all: Vec<u32> = (1..(1u32 << m)).collect();
                all.sort_by_key(|&s| (std::cmp::Reverse(s.count_ones()), bits(s).collect::<Vec<_>>()));
                all
            })
            .collect();
        Ok(PaintSolver { n, adj: small_adjacency(g), patterns, memo: HashMap::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of memoized positions.
    pub fn positions(&self) -> usize {
        self.memo.len()
    }

    fn erasers_from(&self, erasers: &[u32]) -> Result<Erasers, SolverError> {
        if erasers.len() != self.n {
            return Err(SolverError::EraserLength { got: erasers.len(), n: self.n });
        }
        let mut e = [0u8; PAINT_HARD_CAP];
        for (slot, &x) in e.iter_mut().zip(erasers) {
            *slot = x.min(MAX_ERASERS) as u8;
        }
        Ok(e)
    }

    fn full_mask(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    pub fn is_paintable(&mut self, erasers: &[u32]) -> Result<bool, SolverError> {
        let e = self.erasers_from(erasers)?;
        Ok(self.solve(self.full_mask(), &e).is_none())
    }

    /// A winning painter move from this position, if one exists.
    pub fn painter_move(&mut self, remaining: u32, erasers: &[u32]) -> Result<Option<u32>, SolverError> {
        let e = self.erasers_from(erasers)?;
        Ok(self.solve(remaining & self.full_mask(), &e))
    }

    /// A response to `presented` after which the corrector still wins, if any.
    pub fn corrector_move(&mut self, remaining: u32, erasers: &[u32], presented: u32) -> Result<Option<u32>, SolverError> {
        let e = self.erasers_from(erasers)?;
        Ok(self.winning_response(remaining, &e, presented))
    }

    /// All maximal responses to `presented` that contain every zero-eraser
    /// vertex, paired with whether the corrector still wins afterwards.
    pub fn responses(&mut self, remaining: u32, erasers: &[u32], presented: u32) -> Result<Vec<(u32, bool)>, SolverError> {
        let e = self.erasers_from(erasers)?;
        let mut out = Vec::new();
        for keep in self.maximal_responses(&e, presented) {
            let (r, e2) = after(remaining, &e, presented, keep);
            let wins = self.solve(r, &e2).is_none();
            out.push((keep, wins));
        }
        Ok(out)
    }

    fn reduce(&self, mut r: u32, e: &Erasers) -> u32 {
        loop {
            let before = r;
            for v in bits(r) {
                if u32::from(e[v]) >= (self.adj[v] & r).count_ones() {
                    r &= !(1 << v);
                }
            }
            if r == before {
                return r;
            }
        }
    }

    fn component_of(&self, r: u32, start: usize) -> u32 {
        let mut comp = 1u32 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v] & r;
            }
            frontier = next & !comp;
            comp |= next;
        }
        comp
    }

    fn solve(&mut self, r: u32, e: &Erasers) -> Option<u32> {
        let mut rest = self.reduce(r, e);
        while rest != 0 {
            let comp = self.component_of(rest, rest.trailing_zeros() as usize);
            rest &= !comp;
            if let Some(s) = self.solve_connected(comp, e) {
                return Some(s);
            }
        }
        None
    }

    fn key(r: u32, e: &Erasers) -> u128 {
        let mut k = u128::from(r);
        for v in bits(r) {
            k |= u128::from(e[v]) << (16 + 4 * v);
        }
        k
    }

    fn solve_connected(&mut self, r: u32, e: &Erasers) -> Option<u32> {
        let key = Self::key(r, e);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let zero = bits(r).filter(|&v| e[v] == 0).fold(0u32, |m, v| m | 1 << v);
        if let Some(v) = bits(zero).find(|&v| self.adj[v] & zero != 0) {
            let u = (self.adj[v] & zero).trailing_zeros();
            let s = 1 << v | 1 << u;
            self.memo.insert(key, Some(s));
            return Some(s);
        }
        let verts: Vec<usize> = bits(r).collect();
        let m = verts.len();
        let mut result = None;
        for i in 0..self.patterns[m].len() {
            let s = deposit(self.patterns[m][i], &verts);
            if self.winning_response(r, e, s).is_none() {
                result = Some(s);
                break;
            }
        }
        self.memo.insert(key, result);
        result
    }

    fn winning_response(&mut self, r: u32, e: &Erasers, s: u32) -> Option<u32> {
        for keep in self.maximal_responses(e, s) {
            let (r2, e2) = after(r, e, s, keep);
            if self.solve(r2, &e2).is_none() {
                return Some(keep);
            }
        }
        None
    }

    /// Maximal independent subsets of `s` containing its zero-eraser
    /// vertices; empty if those vertices are not independent.
    fn maximal_responses(&self, e: &Erasers, s: u32) -> Vec<u32> {
        let zero = bits(s).filter(|&v| e[v] == 0).fold(0u32, |m, v| m | 1 << v);
        let mut blocked = 0;
        for v in bits(zero) {
            if self.adj[v] & zero != 0 {
                return Vec::new();
            }
            blocked |= self.adj[v];
        }
        let free = s & !zero & !blocked;
        let mut out = Vec::new();
        maximal_independent(&self.adj, free, 0, zero, &mut out);
        out
    }
}

fn after(r: u32, e: &Erasers, s: u32, keep: u32) -> (u32, Erasers) {
    let mut e2 = *e;
    for v in bits(s & !keep) {
        e2[v] -= 1;
    }
    (r & !keep, e2)
}

/// Maps the bits of an `m`-bit pattern onto `verts`.
fn deposit(pattern: u32, verts: &[usize]) -> u32 {
    bits(pattern).fold(0, |m, i| m | 1 << verts[i])
}

/// Bron–Kerbosch with pivoting on the complement graph.
fn maximal_independent(adj: &[u32], mut p: u32, mut x: u32, chosen: u32, out: &mut Vec<u32>) {
    if p == 0 {
        if x == 0 {
            out.push(chosen);
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    for v in bits(p & (adj[pivot] | 1 << pivot)) {
        let closed = adj[v] | 1 << v;
        maximal_independent(adj, p & !closed, x & !closed, chosen | 1 << v, out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// Whether the corrector wins with per-vertex eraser counts `erasers`.
pub fn is_paintable(g: &Graph, erasers: &[u32], cfg: &SolverConfig) -> Result<bool, SolverError> {
    PaintSolver::new(g, cfg)?.is_paintable(erasers)
}

/// Least `k` such that the corrector wins with `k - 1` erasers per vertex.
/// The search starts at the chromatic number; degeneracy plus one always
/// suffices.
pub fn paintability(g: &Graph, cfg: &SolverConfig) -> Result<usize, SolverError> {
    let mut solver = PaintSolver::new(g, cfg)?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let chi = chromatic_number(g, cfg)?;
    let upper = degeneracy(g) + 1;
    for k in chi..upper {
        if solver.is_paintable(&vec![k as u32 - 1; n])? {
            return Ok(k);
        }
    }
    Ok(upper)
}
