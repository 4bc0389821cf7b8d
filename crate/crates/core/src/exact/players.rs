use super::{bits, PaintSolver, SolverConfig, SolverError};
use crate::game::{Corrector, GameState, Painter, PainterMove};
use crate::graph::{Graph, Vertex};
use crate::rng::Rng;

fn state_masks(state: &GameState<'_>) -> (u32, Vec<u32>) {
    let remaining = state.remaining().ones().fold(0u32, |m, v| m | 1 << v);
    (remaining, state.erasers().to_vec())
}

fn to_vertices(mask: u32) -> Vec<Vertex> {
    bits(mask).collect()
}

/// Painter driven by the game-tree solver.
///
/// From a position the corrector cannot win it plays a winning set. From a
/// position she can win (only possible for the best-effort variant, or after
/// a non-optimal reply) it plays the set with the most losing maximal
/// replies, first in enumeration order on ties.
#[derive(Clone, Debug)]
pub struct OptimalPainter {
    solver: PaintSolver,
}

impl OptimalPainter {
    /// Errors with [`SolverError::Paintable`] if the corrector wins the
    /// game with `budget` erasers per vertex.
    pub fn new(g: &Graph, budget: u32, cfg: &SolverConfig) -> Result<Self, SolverError> {
        let mut solver = PaintSolver::new(g, cfg)?;
        if solver.is_paintable(&vec![budget; g.n()])? {
            return Err(SolverError::Paintable);
        }
        Ok(OptimalPainter { solver })
    }

    pub fn best_effort(g: &Graph, cfg: &SolverConfig) -> Result<Self, SolverError> {
        Ok(OptimalPainter { solver: PaintSolver::new(g, cfg)? })
    }

    fn most_damaging(&mut self, remaining: u32, erasers: &[u32]) -> u32 {
        let mut best = (0usize, remaining);
        let verts: Vec<usize> = bits(remaining).collect();
        let mut sets: Vec<u32> = (1..(1u32 << verts.len())).map(|p| bits(p).fold(0, |m, i| m | 1 << verts[i])).collect();
        sets.sort_by_key(|&s| (std::cmp::Reverse(s.count_ones()), bits(s).collect::<Vec<_>>()));
        for s in sets {
            let losing = self.solver.responses(remaining, erasers, s).expect("sizes match").iter().filter(|r| !r.1).count();
            if losing > best.0 {
                best = (losing, s);
            }
        }
        best.1
    }
}

impl Painter for OptimalPainter {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn present(&mut self, state: &GameState<'_>, _rng: &mut Rng) -> PainterMove {
        let (remaining, erasers) = state_masks(state);
        if remaining == 0 {
            return PainterMove::Resign;
        }
        let set = match self.solver.painter_move(remaining, &erasers).expect("sizes match") {
            Some(s) => s,
            None => self.most_damaging(remaining, &erasers),
        };
        PainterMove::Present(to_vertices(set))
    }
}

/// Corrector that keeps the position winning whenever it can; otherwise it
/// keeps a maximal independent set containing all forced vertices.
#[derive(Clone, Debug)]
pub struct SolverCorrector {
    solver: PaintSolver,
}

impl SolverCorrector {
    pub fn new(g: &Graph, cfg: &SolverConfig) -> Result<Self, SolverError> {
        Ok(SolverCorrector { solver: PaintSolver::new(g, cfg)? })
    }
}

impl Corrector for SolverCorrector {
    fn name(&self) -> String {
        "solver".into()
    }

    fn respond(&mut self, state: &GameState<'_>, _rng: &mut Rng) -> Vec<Vertex> {
        let (remaining, erasers) = state_masks(state);
        let presented = state.pending().iter().fold(0u32, |m, &v| m | 1 << v);
        if let Some(keep) = self.solver.corrector_move(remaining, &erasers, presented).expect("sizes match") {
            return to_vertices(keep);
        }
        let options = self.solver.responses(remaining, &erasers, presented).expect("sizes match");
        options.first().map(|r| to_vertices(r.0)).unwrap_or_else(|| state.forced_keeps())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{run_game, Outcome};
    use crate::graph::{all_trees, complete, cycle, gnp};

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn strict_painter_requires_a_losing_position() {
        assert!(OptimalPainter::new(&complete(3), 1, &cfg()).is_ok());
        assert!(OptimalPainter::new(&cycle(5), 1, &cfg()).is_ok());
        for t in all_trees(5) {
            assert_eq!(OptimalPainter::new(&t, 1, &cfg()).unwrap_err(), SolverError::Paintable);
        }
    }

    #[test]
    fn solver_players_realize_the_game_value() {
        for seed in 0..30 {
            let n = 4 + seed as usize % 4;
            let g = gnp(n, 0.5, seed).unwrap();
            for budget in 0..3 {
                let paintable = crate::exact::is_paintable(&g, &vec![budget; n], &cfg()).unwrap();
                let mut painter = OptimalPainter::best_effort(&g, &cfg()).unwrap();
                let mut corrector = SolverCorrector::new(&g, &cfg()).unwrap();
                let report = run_game(&g, budget, &mut painter, &mut corrector, seed, false);
                let want = if paintable { Outcome::CorrectorWins } else { Outcome::PainterWins };
                assert_eq!(report.outcome, want, "seed {seed}, budget {budget}");
            }
        }
    }
}
