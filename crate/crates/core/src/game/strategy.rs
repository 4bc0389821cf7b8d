use serde::{Deserialize, Serialize};

use super::GameState;
use crate::graph::Vertex;
use crate::rng::Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PainterMove {
    Present(Vec<Vertex>),
    Resign,
}

/// A painter sees the full public state and draws randomness only from the
/// stream handed to it by the referee.
pub trait Painter {
    fn name(&self) -> String;
    fn present(&mut self, state: &GameState<'_>, rng: &mut Rng) -> PainterMove;
}

/// A corrector answers `state.pending()` with the set of vertices to keep.
pub trait Corrector {
    fn name(&self) -> String;
    fn respond(&mut self, state: &GameState<'_>, rng: &mut Rng) -> Vec<Vertex>;

    fn diagnostics(&self) -> Option<CorrectorDiagnostics> {
        None
    }
}

/// Per-game bookkeeping reported by the randomized correctors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectorDiagnostics {
    pub small_rounds: usize,
    pub medium_rounds: usize,
    pub large_rounds: usize,
    /// Erasers spent in rounds of each class.
    pub small_erasers: u64,
    pub medium_erasers: u64,
    pub large_erasers: u64,
    /// Smallest set kept in a large round.
    pub min_large_keep: Option<usize>,
    /// Independent-set extractions that fell short of their target.
    pub extraction_fallbacks: usize,
    /// Medium-set partitions that stopped early.
    pub partition_fallbacks: usize,
    /// Rounds in which the randomly drawn group or type was empty.
    pub empty_draws: usize,
}
