//! Leaf-peeling correctors for forests and graphs whose components have at
//! most one cycle.
//!
//! Each component is a stack of leaf wrappers around a core. A wrapper for
//! leaf `l` with parent `w` asks the inner strategy about `S - {l}` and then
//! keeps `l` unless `w` was just kept; in that case `l` spends one eraser and
//! is kept the next time it shows up (by then `w` is coloured). A tree core
//! is one vertex, always kept. A cycle core keeps one vertex the first time
//! it is hit and then plays the same wrappers on the remaining path. Trees
//! need one eraser per vertex, cycles two.

use fixedbitset::FixedBitSet;

use super::StrategyError;
use crate::exact::StateKey;
use crate::game::{Corrector, GameState};
use crate::graph::{ComponentClass, Graph, Vertex};
use crate::rng::Rng;

#[derive(Clone, Debug)]
enum Core {
    Single(Vertex),
    Cycle { cycle: Vec<Vertex>, path: Option<PathCore> },
}

#[derive(Clone, Debug)]
struct PathCore {
    start: Vertex,
    wrappers: Vec<(Vertex, Vertex)>,
    last: Vertex,
}

#[derive(Clone, Debug)]
struct Component {
    /// `(leaf, parent)` in elimination order, outermost first.
    wrappers: Vec<(Vertex, Vertex)>,
    core: Core,
}

#[derive(Clone, Debug)]
pub struct PeelingCorrector {
    name: &'static str,
    components: Vec<Component>,
    deferred: FixedBitSet,
}

/// Leaf wrappers for a path given in order, eliminated from its first end.
fn path_wrappers(path: &[Vertex]) -> (Vec<(Vertex, Vertex)>, Vertex) {
    let wrappers = path.windows(2).map(|w| (w[0], w[1])).collect();
    (wrappers, *path.last().expect("nonempty path"))
}

impl PeelingCorrector {
    /// Accepts graphs whose components all have at most one cycle.
    pub fn new(g: &Graph) -> Result<Self, StrategyError> {
        Self::build(g, "unicyclic", true)
    }

    fn build(g: &Graph, name: &'static str, allow_cycles: bool) -> Result<Self, StrategyError> {
        let n = g.n();
        let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        let mut alive = FixedBitSet::with_capacity(n);
        alive.insert_range(..);
        let mut components = Vec::new();
        for comp in g.components() {
            match comp.class {
                ComponentClass::Complex => {
                    return Err(StrategyError::Graph(format!(
                        "component of vertex {} has {} vertices and {} edges",
                        comp.vertices[0],
                        comp.vertices.len(),
                        comp.edges
                    )))
                }
                ComponentClass::Unicyclic if !allow_cycles => {
                    return Err(StrategyError::Graph(format!("component of vertex {} has a cycle", comp.vertices[0])))
                }
                _ => {}
            }
            let is_tree = comp.edges + 1 == comp.vertices.len();
            let mut wrappers = Vec::new();
            let mut queue: std::collections::VecDeque<Vertex> =
                comp.vertices.iter().copied().filter(|&v| degree[v] == 1).collect();
            let mut left = comp.vertices.len();
            while let Some(leaf) = queue.pop_front() {
                if left == 1 || degree[leaf] != 1 {
                    continue;
                }
                let parent = g.neighbors(leaf).find(|&u| alive.contains(u)).expect("a leaf has one live neighbour");
                alive.set(leaf, false);
                degree[leaf] = 0;
                left -= 1;
                wrappers.push((leaf, parent));
                degree[parent] -= 1;
                if degree[parent] == 1 {
                    queue.push_back(parent);
                }
            }
            let rest: Vec<Vertex> = comp.vertices.iter().copied().filter(|&v| alive.contains(v)).collect();
            let core = if is_tree {
                Core::Single(rest[0])
            } else {
                let mut cycle = vec![rest[0]];
                let mut prev = usize::MAX;
                loop {
                    let cur = *cycle.last().expect("nonempty");
                    let next = g.neighbors(cur).find(|&u| alive.contains(u) && u != prev).expect("cycle continues");
                    if next == cycle[0] {
                        break;
                    }
                    prev = cur;
                    cycle.push(next);
                }
                Core::Cycle { cycle, path: None }
            };
            components.push(Component { wrappers, core });
        }
        Ok(PeelingCorrector { name, components, deferred: FixedBitSet::with_capacity(n) })
    }

    /// Kept set for the presented vertices `set` (sorted or not).
    pub fn keep(&mut self, n: usize, set: &[Vertex]) -> Vec<Vertex> {
        let mut in_s = FixedBitSet::with_capacity(n);
        for &v in set {
            in_s.insert(v);
        }
        let mut kept = FixedBitSet::with_capacity(n);
        for comp in &mut self.components {
            match &mut comp.core {
                Core::Single(v) => {
                    if in_s.contains(*v) {
                        kept.insert(*v);
                    }
                }
                Core::Cycle { cycle, path } => match path {
                    None => {
                        if let Some(pos) = (0..cycle.len()).filter(|&i| in_s.contains(cycle[i])).min_by_key(|&i| cycle[i]) {
                            let start = cycle[pos];
                            kept.insert(start);
                            let rest: Vec<Vertex> = (1..cycle.len()).map(|k| cycle[(pos + k) % cycle.len()]).collect();
                            let (wrappers, last) = path_wrappers(&rest);
                            *path = Some(PathCore { start, wrappers, last });
                        }
                    }
                    Some(pc) => {
                        if in_s.contains(pc.last) {
                            kept.insert(pc.last);
                        }
                        unwrap_leaves(&pc.wrappers, &in_s, &mut kept, &mut self.deferred);
                    }
                },
            }
            unwrap_leaves(&comp.wrappers, &in_s, &mut kept, &mut self.deferred);
        }
        set.iter().copied().filter(|&v| kept.contains(v)).collect()
    }
}

fn unwrap_leaves(wrappers: &[(Vertex, Vertex)], in_s: &FixedBitSet, kept: &mut FixedBitSet, deferred: &mut FixedBitSet) {
    for &(leaf, parent) in wrappers.iter().rev() {
        if !in_s.contains(leaf) {
            continue;
        }
        if deferred.contains(leaf) || !kept.contains(parent) {
            kept.insert(leaf);
        } else {
            deferred.insert(leaf);
        }
    }
}

/// Leaf-peeling corrector for forests; wins with one eraser per vertex.
pub fn tree_corrector(g: &Graph) -> Result<PeelingCorrector, StrategyError> {
    PeelingCorrector::build(g, "tree", false)
}

/// Leaf-peeling corrector for graphs whose components are trees or
/// unicyclic; wins with two erasers per vertex.
pub fn unicyclic_corrector(g: &Graph) -> Result<PeelingCorrector, StrategyError> {
    PeelingCorrector::new(g)
}

impl Corrector for PeelingCorrector {
    fn name(&self) -> String {
        self.name.into()
    }

    fn respond(&mut self, state: &GameState<'_>, _rng: &mut Rng) -> Vec<Vertex> {
        self.keep(state.graph().n(), state.pending())
    }
}

impl StateKey for PeelingCorrector {
    fn state_key(&self) -> Vec<u64> {
        let mut key: Vec<u64> = self.deferred.as_slice().iter().map(|&w| w as u64).collect();
        for comp in &self.components {
            if let Core::Cycle { path, .. } = &comp.core {
                key.push(path.as_ref().map_or(u64::MAX, |p| p.start as u64));
            }
        }
        key
    }
}
