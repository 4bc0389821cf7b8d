//! Game records and their JSON-lines form.
//!
//! ```text
//! {"n":5,"budget":1,"seed":7,"painter_seed":..,"corrector_seed":..,"painter":"full-set","corrector":"tree"}
//! {"round":1,"presented":[0,1,2,3,4],"kept":[0,2,4]}
//! ...
//! {"outcome":"corrector-wins","rounds":3}
//! ```
//!
//! Vertex lists are sorted; the trailer carries `final_presented` (and
//! `final_kept` for a corrector forfeit) when the game ended mid-round.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{GameError, GameState, Outcome, Side};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptHeader {
    pub n: usize,
    pub budget: u32,
    pub seed: u64,
    pub painter_seed: u64,
    pub corrector_seed: u64,
    pub painter: String,
    pub corrector: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub presented: Vec<Vertex>,
    pub kept: Vec<Vertex>,
}

impl Round {
    pub fn erased(&self) -> Vec<Vertex> {
        self.presented.iter().copied().filter(|v| self.kept.binary_search(v).is_err()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub header: TranscriptHeader,
    pub rounds: Vec<Round>,
    pub outcome: Outcome,
    pub final_presented: Option<Vec<Vertex>>,
    pub final_kept: Option<Vec<Vertex>>,
}

#[derive(Debug, Error)]
pub enum TranscriptError {
    #[error("transcript line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("replay diverged at round {round}: {message}")]
    Replay { round: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Serialize, Deserialize)]
struct RoundLine {
    round: usize,
    presented: Vec<Vertex>,
    kept: Vec<Vertex>,
}

#[derive(Serialize, Deserialize)]
struct Trailer {
    outcome: String,
    rounds: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    final_presented: Option<Vec<Vertex>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    final_kept: Option<Vec<Vertex>>,
}

fn outcome_from_label(label: &str) -> Option<Outcome> {
    [
        Outcome::CorrectorWins,
        Outcome::PainterWins,
        Outcome::Forfeit(Side::Painter),
        Outcome::Forfeit(Side::Corrector),
    ]
    .into_iter()
    .find(|o| o.label() == label)
}

impl Transcript {
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{}", serde_json::to_string(&self.header)?)?;
        for (i, r) in self.rounds.iter().enumerate() {
            let line = RoundLine { round: i + 1, presented: r.presented.clone(), kept: r.kept.clone() };
            writeln!(out, "{}", serde_json::to_string(&line)?)?;
        }
        let trailer = Trailer {
            outcome: self.outcome.label().to_string(),
            rounds: self.rounds.len(),
            final_presented: self.final_presented.clone(),
            final_kept: self.final_kept.clone(),
        };
        writeln!(out, "{}", serde_json::to_string(&trailer)?)?;
        out.flush()
    }

    pub fn to_jsonl_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }

    pub fn read_jsonl<R: BufRead>(input: R) -> Result<Self, TranscriptError> {
        let lines: Vec<String> = input.lines().collect::<Result<_, _>>()?;
        let lines: Vec<&str> = lines.iter().map(String::as_str).filter(|l| !l.trim().is_empty()).collect();
        let bad = |line: usize, message: String| TranscriptError::Format { line, message };
        if lines.len() < 2 {
            return Err(bad(lines.len() + 1, "need a header and a trailer line".into()));
        }
        let header: TranscriptHeader = serde_json::from_str(lines[0]).map_err(|e| bad(1, e.to_string()))?;
        let last = lines.len() - 1;
        let trailer: Trailer = serde_json::from_str(lines[last]).map_err(|e| bad(last + 1, e.to_string()))?;
        let mut rounds = Vec::with_capacity(last - 1);
        for (i, line) in lines[1..last].iter().enumerate() {
            let r: RoundLine = serde_json::from_str(line).map_err(|e| bad(i + 2, e.to_string()))?;
            if r.round != i + 1 {
                return Err(bad(i + 2, format!("expected round {}, found {}", i + 1, r.round)));
            }
            rounds.push(Round { presented: r.presented, kept: r.kept });
        }
        if trailer.rounds != rounds.len() {
            return Err(bad(last + 1, "trailer round count does not match".into()));
        }
        let outcome = outcome_from_label(&trailer.outcome)
            .ok_or_else(|| bad(last + 1, format!("unknown outcome {:?}", trailer.outcome)))?;
        Ok(Transcript {
            header,
            rounds,
            outcome,
            final_presented: trailer.final_presented,
            final_kept: trailer.final_kept,
        })
    }

    /// Feeds every recorded move through a fresh referee, checks that the
    /// recorded outcome is reproduced, and returns the eraser vector after
    /// each completed round.
    pub fn replay(&self, graph: &Graph) -> Result<Vec<Vec<u32>>, TranscriptError> {
        let diverged = |round: usize, message: String| TranscriptError::Replay { round, message };
        if graph.n() != self.header.n {
            return Err(diverged(0, "graph size differs from the header".into()));
        }
        let mut state = GameState::new(graph, self.header.budget);
        let mut trace = Vec::with_capacity(self.rounds.len());
        for (i, r) in self.rounds.iter().enumerate() {
            state.present(&r.presented).map_err(|e| diverged(i + 1, e.to_string()))?;
            if !state.legal_responses_exist().map_err(|e| diverged(i + 1, e.to_string()))? {
                return Err(diverged(i + 1, "recorded round had no legal response".into()));
            }
            state.respond(&r.kept).map_err(|e| diverged(i + 1, e.to_string()))?;
            trace.push(state.erasers().to_vec());
        }
        let end = self.rounds.len() + 1;
        let reproduced = match (self.outcome, &self.final_presented) {
            (Outcome::CorrectorWins, _) => state.outcome() == Some(Outcome::CorrectorWins),
            (Outcome::PainterWins, Some(set)) => {
                state.present(set).is_ok() && state.legal_responses_exist() == Ok(false)
            }
            (Outcome::Forfeit(Side::Painter), None) => state.outcome().is_none(),
            (Outcome::Forfeit(Side::Painter), Some(set)) => state.present(set).is_err(),
            (Outcome::Forfeit(Side::Corrector), Some(set)) => {
                let kept = self.final_kept.clone().unwrap_or_default();
                state.present(set).is_ok()
                    && matches!(state.respond(&kept), Err(GameError::IllegalMove { side: Side::Corrector, .. }))
            }
            _ => false,
        };
        if !reproduced {
            return Err(diverged(end, format!("recorded outcome {} not reproduced", self.outcome.label())));
        }
        Ok(trace)
    }
}
