use fixedbitset::FixedBitSet;

use super::{finish_keep, PeelingCorrector, StrategyError, StrategyParams};
use crate::game::{Corrector, GameState};
use crate::graph::{ComponentClass, Graph, Vertex};
use crate::rng::Rng;

/// Corrector for `p <= c/n`.
///
/// `H` holds every vertex of a tree or unicyclic component together with
/// the vertices of degree at least the threshold inside the remaining
/// components. On `H` it plays the leaf-peeling strategy of each component
/// of `G[H]`; the kept set is then extended greedily to a maximal
/// independent subset of the presented set. A vertex outside `H` is erased
/// only when a neighbour is kept, so it needs at most `deg(v)` erasers.
#[derive(Clone, Debug)]
pub struct VerySparseCorrector {
    local: Vec<Option<usize>>,
    original: Vec<Vertex>,
    inner: PeelingCorrector,
    threshold: usize,
}

impl VerySparseCorrector {
    /// Fails if `G[H]` has a component with more than one cycle.
    pub fn new(g: &Graph, params: &StrategyParams) -> Result<Self, StrategyError> {
        params.validate()?;
        let n = g.n();
        let p = params.resolve_p(g);
        let threshold = params.resolve_degree_threshold(n, p);
        let mut in_h = FixedBitSet::with_capacity(n);
        for comp in g.components() {
            for &v in &comp.vertices {
                if comp.class != ComponentClass::Complex || g.degree(v) >= threshold {
                    in_h.insert(v);
                }
            }
        }
        let members: Vec<Vertex> = in_h.ones().collect();
        let sub = g.induced_subgraph(&members).map_err(|e| StrategyError::Graph(e.to_string()))?;
        let inner = PeelingCorrector::new(&sub.graph)
            .map_err(|e| StrategyError::Graph(format!("high-degree part is not tree/unicyclic: {e}")))?;
        let mut local = vec![None; n];
        for (i, &v) in sub.original.iter().enumerate() {
            local[v] = Some(i);
        }
        Ok(VerySparseCorrector { local, original: sub.original, inner, threshold })
    }

    pub fn h_size(&self) -> usize {
        self.original.len()
    }

    pub fn degree_threshold(&self) -> usize {
        self.threshold
    }
}

impl Corrector for VerySparseCorrector {
    fn name(&self) -> String {
        "very-sparse".into()
    }

    fn respond(&mut self, state: &GameState<'_>, _rng: &mut Rng) -> Vec<Vertex> {
        let set = state.pending();
        let on_h: Vec<usize> = set.iter().filter_map(|&v| self.local[v]).collect();
        let kept_h: Vec<Vertex> =
            self.inner.keep(self.original.len(), &on_h).into_iter().map(|i| self.original[i]).collect();
        let forced = state.forced_keeps();
        // H's choice goes first: its guarantee covers forced H-vertices.
        let mut anchor = kept_h;
        anchor.extend(forced.iter().copied().filter(|&v| self.local[v].is_none()));
        finish_keep(state.graph(), set, &[], &anchor, false)
    }
}
