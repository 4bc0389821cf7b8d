//! Choosability by exhaustive search over list assignments.
//!
//! Up to renaming, a `k`-list assignment is a multiset of colour classes
//! (the set of vertices whose list holds a given colour) covering every
//! vertex exactly `k` times. Vertices of degree below `k` are always
//! colourable and are peeled first; and once every `G - v` is known to be
//! `k`-choosable, a colour held by a single vertex can always be used for
//! it, so only classes of size at least two are enumerated.

use std::collections::HashMap;

use super::{bits, check_cap, chromatic_number, degeneracy, small_adjacency, SolverConfig, SolverError};
use crate::graph::Graph;

/// Whether every vertex can take a colour from its list with adjacent
/// vertices differing.
pub fn list_colourable(g: &Graph, lists: &[Vec<u32>]) -> bool {
    let n = g.n();
    assert_eq!(lists.len(), n, "one list per vertex");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| lists[v].len());
    let mut colour = vec![None; n];
    assign(g, lists, &order, 0, &mut colour)
}

fn assign(g: &Graph, lists: &[Vec<u32>], order: &[usize], i: usize, colour: &mut [Option<u32>]) -> bool {
    let Some(&v) = order.get(i) else { return true };
    for &c in &lists[v] {
        if g.neighbors(v).all(|u| colour[u] != Some(c)) {
            colour[v] = Some(c);
            if assign(g, lists, order, i + 1, colour) {
                return true;
            }
        }
    }
    colour[v] = None;
    false
}

/// Colourability for lists given as colour bitmasks per vertex.
fn mask_colourable(adj: &[u32], lists: &[u64]) -> bool {
    let m = lists.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&v| lists[v].count_ones());
    let mut colour = vec![u32::MAX; m];
    mask_assign(adj, lists, &order, 0, &mut colour)
}

fn mask_assign(adj: &[u32], lists: &[u64], order: &[usize], i: usize, colour: &mut [u32]) -> bool {
    let Some(&v) = order.get(i) else { return true };
    let mut avail = lists[v];
    for u in bits(adj[v]) {
        if colour[u] != u32::MAX {
            avail &= !(1u64 << colour[u]);
        }
    }
    while avail != 0 {
        colour[v] = avail.trailing_zeros();
        avail &= avail - 1;
        if mask_assign(adj, lists, order, i + 1, colour) {
            return true;
        }
    }
    colour[v] = u32::MAX;
    false
}

fn check_caps(g: &Graph, k: usize, cfg: &SolverConfig) -> Result<(), SolverError> {
    check_cap("choosability", g.n(), cfg.choose_max_n.min(16))?;
    if k > cfg.choose_max_k {
        return Err(SolverError::ListSizeTooLarge { k, cap: cfg.choose_max_k });
    }
    Ok(())
}

pub fn is_choosable(g: &Graph, k: usize, cfg: &SolverConfig) -> Result<bool, SolverError> {
    Ok(choosability_witness(g, k, cfg)?.is_none())
}

/// A `k`-list assignment with no proper colouring from the lists, or `None`
/// if `g` is `k`-choosable.
pub fn choosability_witness(g: &Graph, k: usize, cfg: &SolverConfig) -> Result<Option<Vec<Vec<u32>>>, SolverError> {
    check_caps(g, k, cfg)?;
    let adj = small_adjacency(g);
    let all = ((1u64 << g.n()) - 1) as u32;
    Ok(witness_on(&adj, all, k, &mut HashMap::new()).map(|classes| lists_from_classes(g.n(), k, &classes)))
}

/// Colour classes as vertex masks; vertices covered fewer than `k` times
/// get fresh colours.
fn lists_from_classes(n: usize, k: usize, classes: &[u32]) -> Vec<Vec<u32>> {
    let mut lists = vec![Vec::new(); n];
    for (c, &class) in classes.iter().enumerate() {
        for v in bits(class) {
            lists[v].push(c as u32);
        }
    }
    let mut fresh = classes.len() as u32;
    for list in &mut lists {
        while list.len() < k {
            list.push(fresh);
            fresh += 1;
        }
    }
    lists
}

/// Witness restricted to the vertices in `alive`, as colour classes.
fn witness_on(adj: &[u32], alive: u32, k: usize, seen: &mut HashMap<u32, Option<Vec<u32>>>) -> Option<Vec<u32>> {
    if let Some(w) = seen.get(&alive) {
        return w.clone();
    }
    let w = witness_uncached(adj, alive, k, seen);
    seen.insert(alive, w.clone());
    w
}

fn witness_uncached(adj: &[u32], alive: u32, k: usize, seen: &mut HashMap<u32, Option<Vec<u32>>>) -> Option<Vec<u32>> {
    if k == 0 {
        return (alive != 0).then(Vec::new);
    }
    let mut core = alive;
    loop {
        let low = bits(core).find(|&v| ((adj[v] & core).count_ones() as usize) < k);
        match low {
            Some(v) => core &= !(1 << v),
            None => break,
        }
    }
    if core == 0 {
        return None;
    }
    for v in bits(core) {
        if let Some(w) = witness_on(adj, core & !(1 << v), k, seen) {
            return Some(w);
        }
    }
    let verts: Vec<usize> = bits(core).collect();
    let m = verts.len();
    let local_adj: Vec<u32> = verts
        .iter()
        .map(|&v| verts.iter().enumerate().filter(|&(_, &u)| adj[v] >> u & 1 == 1).fold(0, |a, (j, _)| a | 1 << j))
        .collect();
    let mut classes: Vec<u32> = (1..(1u32 << m)).filter(|s| s.count_ones() >= 2).collect();
    classes.sort_by_key(|&s| (s.trailing_zeros(), s));
    let mut search = ClassSearch { adj: &local_adj, classes: &classes, k, cover: vec![0; m], chosen: Vec::new() };
    if search.run(0) {
        let lift = |s: u32| bits(s).fold(0u32, |a, j| a | 1 << verts[j]);
        Some(search.chosen.iter().map(|&i| lift(classes[i])).collect())
    } else {
        None
    }
}

struct ClassSearch<'a> {
    adj: &'a [u32],
    classes: &'a [u32],
    k: usize,
    cover: Vec<usize>,
    chosen: Vec<usize>,
}

impl ClassSearch<'_> {
    fn lists(&self) -> Vec<u64> {
        let mut lists = vec![0u64; self.cover.len()];
        for (c, &i) in self.chosen.iter().enumerate() {
            for v in bits(self.classes[i]) {
                lists[v] |= 1 << c;
            }
        }
        lists
    }

    /// Multisets are built in nondecreasing class index; classes are sorted
    /// by lowest vertex, so the lowest under-covered vertex must be the
    /// lowest vertex of the next class.
    fn run(&mut self, start: usize) -> bool {
        let Some(v) = self.cover.iter().position(|&c| c < self.k) else {
            return !mask_colourable(self.adj, &self.lists());
        };
        // Lists only grow from here, so a colourable partial assignment
        // cannot lead to a witness.
        if self.cover.iter().all(|&c| c > 0) && mask_colourable(self.adj, &self.lists()) {
            return false;
        }
        for i in start..self.classes.len() {
            let s = self.classes[i];
            if s.trailing_zeros() as usize > v {
                break;
            }
            if s.trailing_zeros() as usize != v || bits(s).any(|u| self.cover[u] >= self.k) {
                continue;
            }
            for u in bits(s) {
                self.cover[u] += 1;
            }
            self.chosen.push(i);
            if self.run(i) {
                return true;
            }
            self.chosen.pop();
            for u in bits(s) {
                self.cover[u] -= 1;
            }
        }
        false
    }
}

/// Least `k` such that `g` is `k`-choosable. Searched from the chromatic
/// number up to degeneracy plus one, which always suffices.
pub fn choice_number(g: &Graph, cfg: &SolverConfig) -> Result<usize, SolverError> {
    check_cap("choosability", g.n(), cfg.choose_max_n.min(16))?;
    if g.n() == 0 {
        return Ok(0);
    }
    let upper = degeneracy(g) + 1;
    for k in chromatic_number(g, cfg)?..upper {
        if is_choosable(g, k, cfg)? {
            return Ok(k);
        }
    }
    Ok(upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_trees, complete, complete_bipartite, cycle, gnp};

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    /// Oracle: every assignment of k-subsets of {0, .., pool-1}.
    fn choosable_brute(g: &Graph, k: usize, pool: usize) -> bool {
        let subsets: Vec<Vec<u32>> = (0u32..(1 << pool))
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| bits(s).map(|c| c as u32).collect())
            .collect();
        let n = g.n();
        let mut idx = vec![0usize; n];
        loop {
            let lists: Vec<Vec<u32>> = idx.iter().map(|&i| subsets[i].clone()).collect();
            if !list_colourable(g, &lists) {
                return false;
            }
            let mut j = 0;
            loop {
                if j == n {
                    return true;
                }
                idx[j] += 1;
                if idx[j] < subsets.len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
    }

    #[test]
    fn k24_lists_from_the_classic_example() {
        let g = complete_bipartite(2, 4);
        let lists = vec![vec![1, 2], vec![3, 4], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]];
        assert!(!list_colourable(&g, &lists));
        assert_eq!(is_choosable(&g, 2, &cfg()), Ok(false));
        let w = choosability_witness(&g, 2, &cfg()).unwrap().unwrap();
        assert!(w.iter().all(|l| l.len() == 2));
        assert!(!list_colourable(&g, &w));
        assert_eq!(choice_number(&g, &cfg()), Ok(3));
    }

    #[test]
    fn small_examples() {
        assert_eq!(is_choosable(&Graph::empty(4), 1, &cfg()), Ok(true));
        assert_eq!(is_choosable(&complete(2), 1, &cfg()), Ok(false));
        assert_eq!(choice_number(&cycle(4), &cfg()), Ok(2));
        assert_eq!(choice_number(&cycle(5), &cfg()), Ok(3));
        assert_eq!(choice_number(&complete(4), &cfg()), Ok(4));
        for n in 2..=6 {
            for t in all_trees(n) {
                assert_eq!(is_choosable(&t, 2, &cfg()), Ok(true));
            }
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        for seed in 0..25 {
            let g = gnp(4, 0.6, seed).unwrap();
            for k in 1..=2 {
                assert_eq!(is_choosable(&g, k, &cfg()).unwrap(), choosable_brute(&g, k, 4 * k), "seed {seed}, k {k}");
            }
        }
        for g in [cycle(4), cycle(5), complete_bipartite(2, 3)] {
            let n = g.n();
            assert_eq!(is_choosable(&g, 2, &cfg()).unwrap(), choosable_brute(&g, 2, n.min(5)));
        }
    }

    #[test]
    fn caps() {
        assert_eq!(is_choosable(&cycle(7), 2, &cfg()), Err(SolverError::TooManyVertices { what: "choosability", n: 7, cap: 6 }));
        assert_eq!(is_choosable(&cycle(5), 4, &cfg()), Err(SolverError::ListSizeTooLarge { k: 4, cap: 3 }));
    }

    #[test]
    fn three_lists_on_six_vertices() {
        let k33 = complete_bipartite(3, 3);
        assert_eq!(is_choosable(&k33, 2, &cfg()), Ok(false));
        assert_eq!(is_choosable(&k33, 3, &cfg()), Ok(true));
        assert_eq!(is_choosable(&complete(6), 3, &cfg()), Ok(false));
        assert_eq!(choice_number(&complete(5), &cfg()), Ok(5));
    }
}
