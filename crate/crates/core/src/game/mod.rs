//! Referee for the Paint–Correct game.
//!
//! The painter presents a nonempty set of uncoloured vertices (one fresh
//! colour per round, so the round index is the colour). The corrector keeps
//! an independent subset; every other presented vertex spends one eraser. A
//! vertex with no erasers must be kept. The painter wins as soon as a
//! presented set contains two adjacent vertices without erasers; the
//! corrector wins when every vertex is coloured.
//!
//! The referee owns legality. Strategies only propose moves.

mod play;
mod strategy;
mod transcript;

pub use play::{play, run_game, GameReport, RoundStat};
pub use strategy::{Corrector, CorrectorDiagnostics, Painter, PainterMove};
pub use transcript::{Round, Transcript, TranscriptError, TranscriptHeader};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Painter,
    Corrector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    CorrectorWins,
    PainterWins,
    Forfeit(Side),
}

impl Outcome {
    pub fn corrector_won(self) -> bool {
        matches!(self, Outcome::CorrectorWins | Outcome::Forfeit(Side::Painter))
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::CorrectorWins => "corrector-wins",
            Outcome::PainterWins => "painter-wins",
            Outcome::Forfeit(Side::Painter) => "painter-forfeit",
            Outcome::Forfeit(Side::Corrector) => "corrector-forfeit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Phase {
    AwaitPresent,
    AwaitRespond,
    Finished(Outcome),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("illegal move by {side:?}: {reason}")]
    IllegalMove { side: Side, reason: String },
    #[error("{action} is not allowed in phase {phase:?}")]
    WrongPhase { action: &'static str, phase: Phase },
}

fn painter_error(reason: impl Into<String>) -> GameError {
    GameError::IllegalMove { side: Side::Painter, reason: reason.into() }
}

fn corrector_error(reason: impl Into<String>) -> GameError {
    GameError::IllegalMove { side: Side::Corrector, reason: reason.into() }
}

#[derive(Clone, Debug)]
pub struct GameState<'g> {
    graph: &'g Graph,
    remaining: FixedBitSet,
    remaining_count: usize,
    erasers: Vec<u32>,
    initial: Vec<u32>,
    round: usize,
    phase: Phase,
    pending: Vec<Vertex>,
}

impl<'g> GameState<'g> {
    /// Fresh game with `budget` erasers on every vertex.
    pub fn new(graph: &'g Graph, budget: u32) -> Self {
        Self::with_erasers(graph, vec![budget; graph.n()])
    }

    /// Fresh game with per-vertex eraser counts.
    pub fn with_erasers(graph: &'g Graph, erasers: Vec<u32>) -> Self {
        assert_eq!(erasers.len(), graph.n(), "one eraser count per vertex");
        let n = graph.n();
        let mut remaining = FixedBitSet::with_capacity(n);
        remaining.insert_range(..);
        let phase = if n == 0 { Phase::Finished(Outcome::CorrectorWins) } else { Phase::AwaitPresent };
        GameState {
            graph,
            remaining,
            remaining_count: n,
            initial: erasers.clone(),
            erasers,
            round: 0,
            phase,
            pending: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn remaining(&self) -> &FixedBitSet {
        &self.remaining
    }

    pub fn remaining_count(&self) -> usize {
        self.remaining_count
    }

    pub fn remaining_vertices(&self) -> Vec<Vertex> {
        self.remaining.ones().collect()
    }

    pub fn is_remaining(&self, v: Vertex) -> bool {
        v < self.graph.n() && self.remaining.contains(v)
    }

    pub fn erasers(&self) -> &[u32] {
        &self.erasers
    }

    pub fn initial_erasers(&self) -> &[u32] {
        &self.initial
    }

    /// Completed rounds so far.
    pub fn round(&self) -> usize {
        self.round
    }

    pub fn phase(&self) -> &Phase {
        &self.phase
    }

    pub fn outcome(&self) -> Option<Outcome> {
        match self.phase {
            Phase::Finished(o) => Some(o),
            _ => None,
        }
    }

    /// The presented set awaiting a response, sorted; empty outside `AwaitRespond`.
    pub fn pending(&self) -> &[Vertex] {
        &self.pending
    }

    pub fn present(&mut self, set: &[Vertex]) -> Result<(), GameError> {
        if self.phase != Phase::AwaitPresent {
            return Err(GameError::WrongPhase { action: "present", phase: self.phase.clone() });
        }
        if set.is_empty() {
            return Err(painter_error("presented set is empty"));
        }
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(painter_error("presented set lists a vertex twice"));
        }
        if let Some(&v) = sorted.iter().find(|&&v| !self.is_remaining(v)) {
            return Err(painter_error(format!("vertex {v} is not an uncoloured vertex")));
        }
        self.pending = sorted;
        self.phase = Phase::AwaitRespond;
        Ok(())
    }

    /// Vertices of the pending set that have no eraser left.
    pub fn forced_keeps(&self) -> Vec<Vertex> {
        self.pending.iter().copied().filter(|&v| self.erasers[v] == 0).collect()
    }

    /// Whether some independent subset of the pending set covers every
    /// pending vertex without erasers; equivalently, those vertices are
    /// independent.
    pub fn legal_responses_exist(&self) -> Result<bool, GameError> {
        if self.phase != Phase::AwaitRespond {
            return Err(GameError::WrongPhase { action: "legal_responses_exist", phase: self.phase.clone() });
        }
        Ok(self.graph.is_independent_unchecked(&self.forced_keeps()))
    }

    /// Applies the corrector's kept set. When no legal response exists the
    /// game ends with a painter win and `keep` is ignored.
    pub fn respond(&mut self, keep: &[Vertex]) -> Result<(), GameError> {
        if !self.legal_responses_exist()? {
            self.phase = Phase::Finished(Outcome::PainterWins);
            return Ok(());
        }
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        if kept.windows(2).any(|w| w[0] == w[1]) {
            return Err(corrector_error("kept set lists a vertex twice"));
        }
        if let Some(&v) = kept.iter().find(|&&v| self.pending.binary_search(&v).is_err()) {
            return Err(corrector_error(format!("vertex {v} was not presented")));
        }
        if !self.graph.is_independent_unchecked(&kept) {
            return Err(corrector_error("kept set is not independent"));
        }
        if let Some(&v) = self.pending.iter().find(|&&v| self.erasers[v] == 0 && kept.binary_search(&v).is_err()) {
            return Err(corrector_error(format!("vertex {v} has no eraser left")));
        }
        let pending = std::mem::take(&mut self.pending);
        let mut k = 0;
        for v in pending {
            if k < kept.len() && kept[k] == v {
                k += 1;
                self.remaining.set(v, false);
                self.remaining_count -= 1;
            } else {
                self.erasers[v] -= 1;
            }
        }
        self.round += 1;
        self.phase =
            if self.remaining_count == 0 { Phase::Finished(Outcome::CorrectorWins) } else { Phase::AwaitPresent };
        Ok(())
    }

    pub(crate) fn finish(&mut self, outcome: Outcome) {
        self.pending.clear();
        self.phase = Phase::Finished(outcome);
    }

    /// Largest number of erasers any vertex has spent.
    pub fn max_erasers_used(&self) -> u32 {
        self.initial.iter().zip(&self.erasers).map(|(i, e)| i - e).max().unwrap_or(0)
    }

    pub fn total_erasers_used(&self) -> u64 {
        self.initial.iter().zip(&self.erasers).map(|(i, e)| u64::from(i - e)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, Graph};

    #[test]
    fn new_game_examples() {
        let c5 = cycle(5);
        let s = GameState::new(&c5, 2);
        assert_eq!(s.erasers(), &[2, 2, 2, 2, 2]);
        assert_eq!(s.phase(), &Phase::AwaitPresent);
        let empty = Graph::empty(0);
        assert_eq!(GameState::new(&empty, 5).outcome(), Some(Outcome::CorrectorWins));
    }

    #[test]
    fn k2_without_erasers_allows_single_keeps_only() {
        let k2 = complete(2);
        let mut s = GameState::new(&k2, 0);
        s.present(&[0]).unwrap();
        assert!(s.legal_responses_exist().unwrap());
        assert!(s.clone().respond(&[]).is_err());
        s.respond(&[0]).unwrap();
        s.present(&[1]).unwrap();
        s.respond(&[1]).unwrap();
        assert_eq!(s.outcome(), Some(Outcome::CorrectorWins));
    }

    #[test]
    fn present_errors() {
        let k3 = complete(3);
        let mut s = GameState::new(&k3, 1);
        assert!(matches!(s.present(&[]), Err(GameError::IllegalMove { side: Side::Painter, .. })));
        s.present(&[0, 1, 2]).unwrap();
        assert_eq!(s.pending(), &[0, 1, 2]);
        assert!(matches!(s.present(&[0]), Err(GameError::WrongPhase { .. })));
        s.respond(&[0]).unwrap();
        assert!(matches!(s.present(&[0]), Err(GameError::IllegalMove { side: Side::Painter, .. })));
        assert!(s.present(&[1, 1]).is_err());
        assert!(s.present(&[9]).is_err());
    }

    #[test]
    fn legal_response_examples() {
        let k2 = complete(2);
        let mut s = GameState::new(&k2, 0);
        s.present(&[0, 1]).unwrap();
        assert!(!s.legal_responses_exist().unwrap());

        let mut s = GameState::with_erasers(&k2, vec![0, 1]);
        s.present(&[0, 1]).unwrap();
        assert!(s.legal_responses_exist().unwrap());
        s.respond(&[0]).unwrap();
        assert_eq!(s.erasers(), &[0, 0]);

        let mut s = GameState::new(&k2, 1);
        assert!(s.legal_responses_exist().is_err());
        s.present(&[0, 1]).unwrap();
        assert!(s.legal_responses_exist().unwrap());
    }

    #[test]
    fn respond_examples() {
        let k2 = complete(2);
        let mut s = GameState::new(&k2, 1);
        s.present(&[0, 1]).unwrap();
        assert!(matches!(s.clone().respond(&[0, 1]), Err(GameError::IllegalMove { side: Side::Corrector, .. })));
        s.respond(&[0]).unwrap();
        assert_eq!(s.erasers(), &[1, 0]);
        assert!(!s.is_remaining(0));
        assert_eq!(s.round(), 1);
    }

    #[test]
    fn c5_without_erasers_is_a_painter_win() {
        let c5 = cycle(5);
        let mut s = GameState::new(&c5, 0);
        s.present(&[0, 1, 2, 3, 4]).unwrap();
        assert!(!s.legal_responses_exist().unwrap());
        s.respond(&[0, 2]).unwrap();
        assert_eq!(s.outcome(), Some(Outcome::PainterWins));
    }

    #[test]
    fn respond_rejects_foreign_and_zero_eraser_erasures() {
        let p3 = crate::graph::path(3);
        let mut s = GameState::with_erasers(&p3, vec![1, 0, 1]);
        s.present(&[0, 1]).unwrap();
        assert!(s.clone().respond(&[2]).is_err());
        assert!(s.clone().respond(&[0]).is_err());
        s.respond(&[1]).unwrap();
        assert_eq!(s.erasers(), &[0, 0, 1]);
    }
}
