//! Named graphs and exhaustive small families (up to isomorphism).

use std::collections::BTreeMap;

use super::{ComponentClass, Graph, Vertex};

fn build(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
    let edges: Vec<_> = edges.into_iter().collect();
    Graph::from_edges(n, &edges).expect("family edges are in range")
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|v| (v - 1, v)))
}

/// Cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    build(n, (0..n).map(|v| (v, (v + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    build(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    build(10, outer.chain(spokes).chain(inner))
}

/// Canonical code of a graph on at most 11 vertices: the lexicographically
/// smallest upper-triangle adjacency string over all relabellings that sort
/// vertices by degree. Two graphs are isomorphic iff their codes are equal.
pub fn canonical_code(g: &Graph) -> (usize, u64) {
    let n = g.n();
    assert!(n <= 11, "canonical_code is brute force; n <= 11");
    let masks = g.adjacency_masks();
    let mut by_degree: Vec<Vertex> = (0..n).collect();
    by_degree.sort_by_key(|&v| masks[v].count_ones());
    let degree_of_slot: Vec<u32> = by_degree.iter().map(|&v| masks[v].count_ones()).collect();

    fn code(order: &[Vertex], masks: &[u64]) -> u64 {
        let mut c = 0u64;
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                c = c << 1 | (masks[order[i]] >> order[j] & 1);
            }
        }
        c
    }

    fn search(slot: usize, order: &mut Vec<Vertex>, used: &mut u64, deg: &[u32], masks: &[u64], best: &mut u64) {
        let n = deg.len();
        if slot == n {
            *best = (*best).min(code(order, masks));
            return;
        }
        for v in 0..n {
            if *used >> v & 1 == 0 && masks[v].count_ones() == deg[slot] {
                *used |= 1 << v;
                order.push(v);
                search(slot + 1, order, used, deg, masks, best);
                order.pop();
                *used &= !(1 << v);
            }
        }
    }

    let mut best = u64::MAX;
    search(0, &mut Vec::with_capacity(n), &mut 0, &degree_of_slot, &masks, &mut best);
    (n, best)
}

/// All trees on `n >= 1` vertices, one per isomorphism class.
pub fn all_trees(n: usize) -> Vec<Graph> {
    assert!(n >= 1);
    let mut level = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut next = BTreeMap::new();
        for t in &level {
            let edges = t.edges();
            for attach in 0..size - 1 {
                let mut e = edges.clone();
                e.push((attach, size - 1));
                let g = build(size, e);
                next.entry(canonical_code(&g)).or_insert(g);
            }
        }
        level = next.into_values().collect();
    }
    level
}

/// All connected unicyclic graphs on `n >= 3` vertices, one per isomorphism class.
pub fn all_unicyclic(n: usize) -> Vec<Graph> {
    assert!(n >= 3);
    let mut out = BTreeMap::new();
    for t in all_trees(n) {
        for u in 0..n {
            for v in u + 1..n {
                if !t.has_edge(u, v) {
                    let mut e = t.edges();
                    e.push((u, v));
                    let g = build(n, e);
                    out.entry(canonical_code(&g)).or_insert(g);
                }
            }
        }
    }
    out.into_values().collect()
}

pub fn is_tree(g: &Graph) -> bool {
    let c = g.components();
    c.len() == 1 && c[0].class == ComponentClass::Tree
}
