//! Undirected simple graphs on vertices `0..n`.
//!
//! Three storage backings share one API:
//! - sorted neighbour lists, for sparse graphs;
//! - a bit matrix, for dense graphs (one [`FixedBitSet`] row per vertex);
//! - a hashed `G(n,p)` whose pairs are decided on demand by [`crate::rng::pair_hash`].
//!   Nothing is stored, so `n = 10^5` at `p = 1/2` costs no memory; edge
//!   queries are O(1) but neighbour iteration is O(n).
//!
//! Graph values are immutable after construction.

mod families;
mod gen;
mod io;

pub use families::*;
pub use gen::{gnp, gnp_hashed, DENSE_METHOD_MIN_P};
pub use io::{parse_edge_list, read_edge_list, write_edge_list};

use std::collections::VecDeque;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::pair_hash;

pub type Vertex = usize;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    UnknownVertex { vertex: Vertex, n: usize },
    #[error("vertex {0} listed twice")]
    DuplicateVertex(Vertex),
    #[error("order is not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("malformed edge list: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug)]
enum Adjacency {
    Lists(Vec<Vec<u32>>),
    Matrix(Vec<FixedBitSet>),
    Hashed { seed: u64, threshold: u64, complete: bool },
}

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edge_count: OnceLock<usize>,
    adj: Adjacency,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentClass {
    Tree,
    Unicyclic,
    Complex,
}

impl ComponentClass {
    pub fn classify(vertices: usize, edges: usize) -> Self {
        if edges + 1 == vertices {
            ComponentClass::Tree
        } else if edges == vertices {
            ComponentClass::Unicyclic
        } else {
            debug_assert!(edges > vertices, "connected component with too few edges");
            ComponentClass::Complex
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<Vertex>,
    pub edges: usize,
    pub class: ComponentClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    pub colours: Vec<usize>,
    pub count: usize,
}

/// An induced subgraph together with the identities of its vertices in the
/// parent graph: local vertex `i` is `original[i]`.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub original: Vec<Vertex>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph::from_lists(vec![Vec::new(); n])
    }

    /// Builds a graph from an edge list. Repeated edges are merged; self-loops
    /// and out-of-range endpoints are errors.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut lists = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::UnknownVertex { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            lists[u].push(v as u32);
            lists[v].push(u as u32);
        }
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        Ok(Graph::from_lists(lists))
    }

    fn from_lists(lists: Vec<Vec<u32>>) -> Self {
        let n = lists.len();
        let m = lists.iter().map(Vec::len).sum::<usize>() / 2;
        let edge_count = OnceLock::new();
        let _ = edge_count.set(m);
        Graph { n, edge_count, adj: Adjacency::Lists(lists) }
    }

    fn from_matrix(rows: Vec<FixedBitSet>) -> Self {
        let n = rows.len();
        let m = rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2;
        let edge_count = OnceLock::new();
        let _ = edge_count.set(m);
        Graph { n, edge_count, adj: Adjacency::Matrix(rows) }
    }

    fn hashed(n: usize, seed: u64, threshold: u64, complete: bool) -> Self {
        Graph { n, edge_count: OnceLock::new(), adj: Adjacency::Hashed { seed, threshold, complete } }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges. O(n^2) on first call for a hashed graph.
    pub fn edge_count(&self) -> usize {
        *self.edge_count.get_or_init(|| (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2)
    }

    pub fn is_hashed(&self) -> bool {
        matches!(self.adj, Adjacency::Hashed { .. })
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        if u == v {
            return false;
        }
        match &self.adj {
            Adjacency::Lists(l) => l[u].binary_search(&(v as u32)).is_ok(),
            Adjacency::Matrix(rows) => rows[u].contains(v),
            Adjacency::Hashed { seed, threshold, complete } => {
                *complete || pair_hash(*seed, u, v) < *threshold
            }
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        match &self.adj {
            Adjacency::Lists(l) => l[v].len(),
            Adjacency::Matrix(rows) => rows[v].count_ones(..),
            Adjacency::Hashed { .. } => (0..self.n).filter(|&u| self.has_edge(v, u)).count(),
        }
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: Vertex) -> Neighbors<'_> {
        match &self.adj {
            Adjacency::Lists(l) => Neighbors::List(l[v].iter()),
            Adjacency::Matrix(rows) => Neighbors::Row(rows[v].ones()),
            Adjacency::Hashed { .. } => Neighbors::Scan { g: self, v, next: 0 },
        }
    }

    /// Clears every neighbour of `v` from `set` (a bitset over `0..n`).
    pub fn remove_neighbors_from(&self, v: Vertex, set: &mut FixedBitSet) {
        match &self.adj {
            Adjacency::Lists(l) => {
                for &u in &l[v] {
                    set.set(u as usize, false);
                }
            }
            Adjacency::Matrix(rows) => set.difference_with(&rows[v]),
            Adjacency::Hashed { .. } => {
                let hits: Vec<usize> = set.ones().filter(|&u| self.has_edge(v, u)).collect();
                for u in hits {
                    set.set(u, false);
                }
            }
        }
    }

    /// Whether `v` has a neighbour in `set` (a bitset over `0..n`).
    pub fn has_neighbor_in(&self, v: Vertex, set: &FixedBitSet) -> bool {
        match &self.adj {
            Adjacency::Lists(l) => l[v].iter().any(|&u| set.contains(u as usize)),
            Adjacency::Matrix(rows) => rows[v].as_slice().iter().zip(set.as_slice()).any(|(a, b)| a & b != 0),
            Adjacency::Hashed { .. } => set.ones().any(|u| self.has_edge(v, u)),
        }
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count.get().copied().unwrap_or(0));
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Adjacency rows as bitmasks, for graphs on at most 64 vertices.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask adjacency needs n <= 64");
        (0..self.n).map(|v| self.neighbors(v).fold(0u64, |m, u| m | 1 << u)).collect()
    }

    pub fn check_vertices(&self, set: &[Vertex]) -> Result<(), GraphError> {
        match set.iter().find(|&&v| v >= self.n) {
            Some(&vertex) => Err(GraphError::UnknownVertex { vertex, n: self.n }),
            None => Ok(()),
        }
    }

    pub fn is_independent(&self, set: &[Vertex]) -> Result<bool, GraphError> {
        self.check_vertices(set)?;
        Ok(self.is_independent_unchecked(set))
    }

    /// Independence test without range checks. Picks pairwise probing or a
    /// neighbourhood sweep, whichever touches fewer entries.
    pub fn is_independent_unchecked(&self, set: &[Vertex]) -> bool {
        let k = set.len();
        if k < 2 {
            return true;
        }
        let pairwise = k * (k - 1) / 2;
        let sweep = match &self.adj {
            Adjacency::Lists(l) => set.iter().map(|&v| l[v].len()).sum::<usize>() + self.n / 8,
            Adjacency::Matrix(_) => k * (self.n / 64 + 1) + self.n / 8,
            Adjacency::Hashed { .. } => usize::MAX,
        };
        if pairwise <= sweep {
            for (i, &u) in set.iter().enumerate() {
                for &v in &set[i + 1..] {
                    if self.has_edge(u, v) {
                        return false;
                    }
                }
            }
            return true;
        }
        let mut members = FixedBitSet::with_capacity(self.n);
        for &v in set {
            members.insert(v);
        }
        match &self.adj {
            Adjacency::Matrix(rows) => set.iter().all(|&v| rows[v].is_disjoint(&members)),
            _ => set.iter().all(|&v| self.neighbors(v).all(|u| !members.contains(u))),
        }
    }

    pub fn components(&self) -> Vec<Component> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            queue.push_back(start);
            let mut vertices = Vec::new();
            let mut degree_sum = 0;
            while let Some(v) = queue.pop_front() {
                vertices.push(v);
                for u in self.neighbors(v) {
                    degree_sum += 1;
                    if !seen.put(u) {
                        queue.push_back(u);
                    }
                }
            }
            vertices.sort_unstable();
            let edges = degree_sum / 2;
            out.push(Component { class: ComponentClass::classify(vertices.len(), edges), vertices, edges });
        }
        out
    }

    /// `(low, high)`: vertices of degree below `threshold`, and the rest.
    pub fn degree_split(&self, threshold: usize) -> (Vec<Vertex>, Vec<Vertex>) {
        (0..self.n).partition(|&v| self.degree(v) < threshold)
    }

    /// First-fit colouring scanning `order`.
    pub fn greedy_colouring(&self, order: &[Vertex]) -> Result<Colouring, GraphError> {
        if order.len() != self.n {
            return Err(GraphError::NotPermutation(self.n));
        }
        let mut seen = FixedBitSet::with_capacity(self.n);
        for &v in order {
            if v >= self.n || seen.put(v) {
                return Err(GraphError::NotPermutation(self.n));
            }
        }
        const NONE: usize = usize::MAX;
        let mut colours = vec![NONE; self.n];
        let mut count = 0;
        let mut used = Vec::new();
        for &v in order {
            used.clear();
            used.extend(self.neighbors(v).map(|u| colours[u]).filter(|&c| c != NONE));
            used.sort_unstable();
            used.dedup();
            let c = used.iter().enumerate().find(|&(i, &c)| i != c).map_or(used.len(), |(i, _)| i);
            colours[v] = c;
            count = count.max(c + 1);
        }
        Ok(Colouring { colours, count })
    }

    pub fn induced_subgraph(&self, set: &[Vertex]) -> Result<InducedSubgraph, GraphError> {
        self.check_vertices(set)?;
        let mut local = vec![u32::MAX; self.n];
        for (i, &v) in set.iter().enumerate() {
            if local[v] != u32::MAX {
                return Err(GraphError::DuplicateVertex(v));
            }
            local[v] = i as u32;
        }
        let k = set.len();
        let dense = !matches!(self.adj, Adjacency::Lists(_)) && k >= 256;
        let graph = if dense {
            let mut rows = vec![FixedBitSet::with_capacity(k); k];
            for i in 0..k {
                for j in i + 1..k {
                    if self.has_edge(set[i], set[j]) {
                        rows[i].insert(j);
                        rows[j].insert(i);
                    }
                }
            }
            Graph::from_matrix(rows)
        } else {
            let mut lists = vec![Vec::new(); k];
            if let Adjacency::Lists(l) = &self.adj {
                for (i, &v) in set.iter().enumerate() {
                    lists[i] = l[v].iter().map(|&u| local[u as usize]).filter(|&j| j != u32::MAX).collect();
                    lists[i].sort_unstable();
                }
            } else {
                for i in 0..k {
                    for j in i + 1..k {
                        if self.has_edge(set[i], set[j]) {
                            lists[i].push(j as u32);
                            lists[j].push(i as u32);
                        }
                    }
                }
            }
            Graph::from_lists(lists)
        };
        Ok(InducedSubgraph { graph, original: set.to_vec() })
    }

    /// Same vertex set, same edges: compares edge sets, not storage.
    pub fn same_edges(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges() == other.edges()
    }
}

pub enum Neighbors<'a> {
    List(std::slice::Iter<'a, u32>),
    Row(fixedbitset::Ones<'a>),
    Scan { g: &'a Graph, v: Vertex, next: Vertex },
}

impl Iterator for Neighbors<'_> {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        match self {
            Neighbors::List(it) => it.next().map(|&u| u as usize),
            Neighbors::Row(it) => it.next(),
            Neighbors::Scan { g, v, next } => {
                while *next < g.n {
                    let u = *next;
                    *next += 1;
                    if g.has_edge(*v, u) {
                        return Some(u);
                    }
                }
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn is_independent_examples() {
        let k3 = complete(3);
        assert!(k3.is_independent(&[]).unwrap());
        assert!(!k3.is_independent(&[0, 1]).unwrap());
        assert!(cycle(5).is_independent(&[0, 2]).unwrap());
        assert!(matches!(k3.is_independent(&[0, 7]), Err(GraphError::UnknownVertex { vertex: 7, .. })));
    }

    #[test]
    fn independence_sweep_matches_pairwise() {
        let g = gnp(300, 0.02, 5).unwrap();
        let big: Vec<usize> = (0..300).step_by(2).collect();
        let pairwise = big
            .iter()
            .enumerate()
            .all(|(i, &u)| big[i + 1..].iter().all(|&v| !g.has_edge(u, v)));
        assert_eq!(g.is_independent_unchecked(&big), pairwise);
    }

    #[test]
    fn component_examples() {
        let p4 = path(4).components();
        assert_eq!(p4.len(), 1);
        assert_eq!(p4[0].class, ComponentClass::Tree);
        assert_eq!(cycle(5).components()[0].class, ComponentClass::Unicyclic);
        let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let c = bowtie.components();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].class, ComponentClass::Complex);
    }

    #[test]
    fn degree_split_examples() {
        let (low, high) = star(5).degree_split(3);
        assert_eq!(low, vec![1, 2, 3, 4, 5]);
        assert_eq!(high, vec![0]);
        let (low, high) = Graph::empty(4).degree_split(1);
        assert_eq!((low.len(), high.len()), (4, 0));
        let (low, high) = complete(4).degree_split(3);
        assert_eq!((low.len(), high.len()), (0, 4));
    }

    #[test]
    fn greedy_colouring_examples() {
        let id = |n: usize| (0..n).collect::<Vec<_>>();
        assert_eq!(complete(4).greedy_colouring(&[3, 1, 0, 2]).unwrap().count, 4);
        assert_eq!(Graph::empty(6).greedy_colouring(&id(6)).unwrap().count, 1);
        // 0->0, 1->1, 2->0, 3->1, 4 sees {1 (v3), 0 (v0)} -> 2
        let c5 = cycle(5).greedy_colouring(&id(5)).unwrap();
        assert_eq!(c5.colours, vec![0, 1, 0, 1, 2]);
        assert_eq!(c5.count, 3);
        assert!(matches!(cycle(5).greedy_colouring(&[0, 1, 1, 3, 4]), Err(GraphError::NotPermutation(5))));
    }

    #[test]
    fn induced_subgraph_examples() {
        let k2 = complete(4).induced_subgraph(&[0, 1]).unwrap();
        assert!(k2.graph.same_edges(&complete(2)));
        assert_eq!(cycle(3).induced_subgraph(&[]).unwrap().graph.n(), 0);
        let p3 = cycle(5).induced_subgraph(&[0, 1, 2]).unwrap();
        assert!(p3.graph.same_edges(&path(3)));
        let sub = cycle(5).induced_subgraph(&[4, 0, 1]).unwrap();
        assert_eq!(sub.original, vec![4, 0, 1]);
        assert!(sub.graph.has_edge(0, 1) && sub.graph.has_edge(1, 2) && !sub.graph.has_edge(0, 2));
    }

    #[test]
    fn from_edges_rejects_self_loops() {
        assert!(matches!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::SelfLoop(1))));
        let g = Graph::from_edges(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn storages_agree() {
        let dense = gnp(120, 0.3, 11).unwrap();
        let hashed = gnp_hashed(120, 0.3, 11).unwrap();
        assert!(dense.same_edges(&hashed));
        for v in 0..120 {
            assert_eq!(dense.degree(v), hashed.degree(v));
        }
        let mut a = FixedBitSet::with_capacity(120);
        a.insert_range(..);
        let mut b = a.clone();
        dense.remove_neighbors_from(7, &mut a);
        hashed.remove_neighbors_from(7, &mut b);
        assert_eq!(a, b);
    }
}
