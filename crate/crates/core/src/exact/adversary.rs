use std::collections::HashSet;

use super::{bits, check_cap, SolverConfig, SolverError, PAINT_HARD_CAP};
use crate::game::{Corrector, GameState};
use crate::graph::{Graph, Vertex};
use crate::rng::{stream_rng, Rng, CORRECTOR_STREAM};

/// Internal state of a corrector, so positions reached along different
/// painter lines can be identified.
pub trait StateKey {
    fn state_key(&self) -> Vec<u64>;
}

/// Tries every painter line against `corrector` and returns one that wins
/// (the presented sets in order), or `None` if the corrector survives all of
/// them. The corrector always receives the same fixed random stream, so this
/// is exhaustive only for correctors that ignore their randomness.
pub fn find_painter_win<C: Corrector + Clone + StateKey>(
    g: &Graph,
    budget: u32,
    corrector: &C,
    cfg: &SolverConfig,
) -> Result<Option<Vec<Vec<Vertex>>>, SolverError> {
    check_cap("exhaustive painter search", g.n(), cfg.paint_max_n.min(PAINT_HARD_CAP))?;
    let mut search = Search { safe: HashSet::new(), line: Vec::new() };
    let state = GameState::new(g, budget);
    let rng = stream_rng(0, CORRECTOR_STREAM);
    if state.outcome().is_none() && search.dfs(&state, corrector, &rng) {
        Ok(Some(search.line))
    } else {
        Ok(None)
    }
}

struct Search {
    safe: HashSet<(u32, Vec<u32>, Vec<u64>)>,
    line: Vec<Vec<Vertex>>,
}

impl Search {
    fn dfs<C: Corrector + Clone + StateKey>(&mut self, state: &GameState<'_>, corrector: &C, rng: &Rng) -> bool {
        let remaining = state.remaining().ones().fold(0u32, |m, v| m | 1 << v);
        let erasers: Vec<u32> = bits(remaining).map(|v| state.erasers()[v]).collect();
        let key = (remaining, erasers, corrector.state_key());
        if self.safe.contains(&key) {
            return false;
        }
        let mut s = remaining;
        while s != 0 {
            let set: Vec<Vertex> = bits(s).collect();
            let mut next = state.clone();
            next.present(&set).expect("subset of the remaining vertices");
            self.line.push(set);
            if !next.legal_responses_exist().expect("awaiting a response") {
                return true;
            }
            let mut c = corrector.clone();
            let mut r = rng.clone();
            let keep = c.respond(&next, &mut r);
            if next.respond(&keep).is_err() {
                return true;
            }
            if next.outcome().is_none() && self.dfs(&next, &c, &r) {
                return true;
            }
            self.line.pop();
            s = (s - 1) & remaining;
        }
        self.safe.insert(key);
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};

    /// Keeps the lowest presented vertex only.
    #[derive(Clone)]
    struct LowestFirst;

    impl Corrector for LowestFirst {
        fn name(&self) -> String {
            "lowest".into()
        }
        fn respond(&mut self, state: &GameState<'_>, _rng: &mut Rng) -> Vec<Vertex> {
            let forced = state.forced_keeps();
            if forced.is_empty() {
                state.pending()[..1].to_vec()
            } else {
                forced
            }
        }
    }

    impl StateKey for LowestFirst {
        fn state_key(&self) -> Vec<u64> {
            Vec::new()
        }
    }

    #[test]
    fn finds_a_win_against_a_naive_corrector() {
        let cfg = SolverConfig::default();
        // On P3 with one eraser, presenting everything twice beats keeping one vertex.
        let line = find_painter_win(&path(3), 1, &LowestFirst, &cfg).unwrap().expect("painter wins");
        assert!(!line.is_empty());
        // K2 with one eraser is winnable for any legal corrector.
        assert_eq!(find_painter_win(&complete(2), 1, &LowestFirst, &cfg).unwrap(), None);
    }
}
