use super::transcript::{Round, Transcript, TranscriptHeader};
use super::{Corrector, GameError, GameState, Outcome, Painter, PainterMove, Side};
use crate::graph::{Graph, Vertex};
use crate::rng::{derive_seed, stream_rng, CORRECTOR_STREAM, PAINTER_STREAM};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundStat {
    pub presented: usize,
    pub kept: usize,
}

#[derive(Clone, Debug)]
pub struct GameReport {
    pub outcome: Outcome,
    pub rounds: usize,
    pub budget: u32,
    pub final_erasers: Vec<u32>,
    pub max_erasers_used: u32,
    pub total_erasers_used: u64,
    pub round_stats: Vec<RoundStat>,
    pub forfeit_reason: Option<String>,
    pub transcript: Option<Transcript>,
}

/// Plays one game to completion and returns its transcript.
pub fn play(
    graph: &Graph,
    budget: u32,
    painter: &mut dyn Painter,
    corrector: &mut dyn Corrector,
    seed: u64,
) -> Transcript {
    run_game(graph, budget, painter, corrector, seed, true).transcript.expect("transcript requested")
}

/// Plays one game. The painter and corrector streams are
/// `stream_rng(derive_seed(seed, 0), PAINTER_STREAM)` and
/// `stream_rng(derive_seed(seed, 1), CORRECTOR_STREAM)`.
pub fn run_game(
    graph: &Graph,
    budget: u32,
    painter: &mut dyn Painter,
    corrector: &mut dyn Corrector,
    seed: u64,
    record: bool,
) -> GameReport {
    let painter_seed = derive_seed(seed, 0);
    let corrector_seed = derive_seed(seed, 1);
    let mut painter_rng = stream_rng(painter_seed, PAINTER_STREAM);
    let mut corrector_rng = stream_rng(corrector_seed, CORRECTOR_STREAM);

    let mut state = GameState::new(graph, budget);
    let mut rounds = Vec::new();
    let mut round_stats = Vec::new();
    let mut final_presented = None;
    let mut final_kept = None;
    let mut forfeit_reason = None;

    while state.outcome().is_none() {
        let set = match painter.present(&state, &mut painter_rng) {
            PainterMove::Resign => {
                state.finish(Outcome::Forfeit(Side::Painter));
                forfeit_reason = Some("painter resigned".to_string());
                break;
            }
            PainterMove::Present(set) => set,
        };
        if let Err(e) = state.present(&set) {
            state.finish(Outcome::Forfeit(Side::Painter));
            forfeit_reason = Some(e.to_string());
            final_presented = Some(sorted(set));
            break;
        }
        if !state.legal_responses_exist().expect("awaiting response") {
            final_presented = Some(state.pending().to_vec());
            state.finish(Outcome::PainterWins);
            break;
        }
        let presented = state.pending().to_vec();
        let keep = corrector.respond(&state, &mut corrector_rng);
        match state.respond(&keep) {
            Ok(()) => {
                let kept = sorted(keep);
                round_stats.push(RoundStat { presented: presented.len(), kept: kept.len() });
                if record {
                    rounds.push(Round { presented, kept });
                }
            }
            Err(e @ GameError::IllegalMove { .. }) => {
                forfeit_reason = Some(e.to_string());
                final_presented = Some(presented);
                final_kept = Some(sorted(keep));
                state.finish(Outcome::Forfeit(Side::Corrector));
            }
            Err(e) => unreachable!("referee phase error: {e}"),
        }
    }

    let outcome = state.outcome().expect("loop ends on a finished game");
    let transcript = record.then(|| Transcript {
        header: TranscriptHeader {
            n: graph.n(),
            budget,
            seed,
            painter_seed,
            corrector_seed,
            painter: painter.name(),
            corrector: corrector.name(),
        },
        rounds,
        outcome,
        final_presented,
        final_kept,
    });
    GameReport {
        outcome,
        rounds: state.round(),
        budget,
        max_erasers_used: state.max_erasers_used(),
        total_erasers_used: state.total_erasers_used(),
        final_erasers: state.erasers().to_vec(),
        round_stats,
        forfeit_reason,
        transcript,
    }
}

fn sorted(mut v: Vec<Vertex>) -> Vec<Vertex> {
    v.sort_unstable();
    v
}
