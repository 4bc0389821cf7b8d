use std::path::Path;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng as _;

use super::StrategyError;
use crate::game::{GameState, Painter, PainterMove};
use crate::graph::Vertex;
use crate::rng::Rng;

/// Presents every uncoloured vertex each round.
#[derive(Clone, Debug, Default)]
pub struct FullSetPainter;

impl Painter for FullSetPainter {
    fn name(&self) -> String {
        "full-set".into()
    }

    fn present(&mut self, state: &GameState<'_>, _rng: &mut Rng) -> PainterMove {
        PainterMove::Present(state.remaining_vertices())
    }
}

/// Includes each uncoloured vertex independently with probability `q`,
/// redrawing empty sets.
#[derive(Clone, Debug)]
pub struct RandomPainter {
    q: f64,
}

impl RandomPainter {
    pub fn new(q: f64) -> Result<Self, StrategyError> {
        if q > 0.0 && q <= 1.0 {
            Ok(RandomPainter { q })
        } else {
            Err(StrategyError::Param(format!("random painter needs q in (0,1], got {q}")))
        }
    }
}

impl Painter for RandomPainter {
    fn name(&self) -> String {
        format!("random:{}", self.q)
    }

    fn present(&mut self, state: &GameState<'_>, rng: &mut Rng) -> PainterMove {
        let remaining = state.remaining_vertices();
        if self.q >= 1.0 {
            return PainterMove::Present(remaining);
        }
        loop {
            let set: Vec<Vertex> = remaining.iter().copied().filter(|_| rng.gen_bool(self.q)).collect();
            if !set.is_empty() {
                return PainterMove::Present(set);
            }
        }
    }
}

/// Presents an adjacent pair of vertices without erasers when one exists;
/// otherwise the uncoloured vertices with the fewest erasers together with
/// their uncoloured neighbours.
#[derive(Clone, Debug, Default)]
pub struct LowEraserPainter;

impl Painter for LowEraserPainter {
    fn name(&self) -> String {
        "low-eraser".into()
    }

    fn present(&mut self, state: &GameState<'_>, rng: &mut Rng) -> PainterMove {
        let g = state.graph();
        let e = state.erasers();
        let remaining = state.remaining_vertices();
        let min = remaining.iter().map(|&v| e[v]).min().unwrap_or(0);
        let mut low: Vec<Vertex> = remaining.iter().copied().filter(|&v| e[v] == min).collect();
        let mut low_set = FixedBitSet::with_capacity(g.n());
        for &v in &low {
            low_set.insert(v);
        }
        if min == 0 {
            low.shuffle(rng);
            for &v in &low {
                if g.has_neighbor_in(v, &low_set) {
                    let u = g.neighbors(v).find(|&u| low_set.contains(u)).expect("a zero-eraser neighbour");
                    return PainterMove::Present(vec![v.min(u), v.max(u)]);
                }
            }
        }
        if low.len() == remaining.len() {
            return PainterMove::Present(remaining);
        }
        let set = remaining.into_iter().filter(|&v| low_set.contains(v) || g.has_neighbor_in(v, &low_set)).collect();
        PainterMove::Present(set)
    }
}

/// Walks through the colours of a list assignment in increasing order and
/// presents, for each, the uncoloured vertices whose list contains it.
/// Resigns once every colour has been used.
#[derive(Clone, Debug)]
pub struct ListAdversaryPainter {
    lists: Vec<Vec<u32>>,
    colours: Vec<u32>,
    next: usize,
}

impl ListAdversaryPainter {
    pub fn new(lists: Vec<Vec<u32>>) -> Result<Self, StrategyError> {
        if let Some(v) = lists.iter().position(Vec::is_empty) {
            return Err(StrategyError::Param(format!("vertex {v} has an empty list")));
        }
        let mut colours: Vec<u32> = lists.iter().flatten().copied().collect();
        colours.sort_unstable();
        colours.dedup();
        Ok(ListAdversaryPainter { lists, colours, next: 0 })
    }
}

impl Painter for ListAdversaryPainter {
    fn name(&self) -> String {
        "list".into()
    }

    fn present(&mut self, state: &GameState<'_>, _rng: &mut Rng) -> PainterMove {
        while self.next < self.colours.len() {
            let c = self.colours[self.next];
            self.next += 1;
            let set: Vec<Vertex> = state
                .remaining()
                .ones()
                .filter(|&v| self.lists.get(v).is_some_and(|l| l.contains(&c)))
                .collect();
            if !set.is_empty() {
                return PainterMove::Present(set);
            }
        }
        PainterMove::Resign
    }
}

/// Reads a list assignment: a JSON array of colour arrays, or an object
/// mapping vertex numbers to colour arrays. Vertices must be `0..n`.
pub fn read_lists(path: &Path, n: usize) -> Result<Vec<Vec<u32>>, StrategyError> {
    let err = |m: String| StrategyError::ListFile(format!("{}: {m}", path.display()));
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| err(e.to_string()))?;
    let lists: Vec<Vec<u32>> = match value {
        serde_json::Value::Array(_) => serde_json::from_value(value).map_err(|e| err(e.to_string()))?,
        serde_json::Value::Object(map) => {
            let mut lists = vec![Vec::new(); n];
            for (k, v) in map {
                let vertex: usize = k.parse().map_err(|_| err(format!("bad vertex key {k:?}")))?;
                if vertex >= n {
                    return Err(err(format!("vertex {vertex} out of range for n = {n}")));
                }
                lists[vertex] = serde_json::from_value(v).map_err(|e| err(e.to_string()))?;
            }
            lists
        }
        _ => return Err(err("expected an array or an object".into())),
    };
    if lists.len() != n {
        return Err(err(format!("{} lists for {n} vertices", lists.len())));
    }
    Ok(lists)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{run_game, Outcome};
    use crate::graph::{complete, complete_bipartite, cycle, gnp, path, Graph};
    use crate::rng::stream_rng;
    use crate::strategies::MaximalIsCorrector;

    fn first_round(g: &crate::graph::Graph, painter: &mut dyn Painter, seed: u64) -> Vec<Vertex> {
        let state = GameState::new(g, 1);
        match painter.present(&state, &mut stream_rng(seed, crate::rng::PAINTER_STREAM)) {
            PainterMove::Present(s) => s,
            PainterMove::Resign => panic!("resigned"),
        }
    }

    #[test]
    fn full_set_on_edgeless_graph_takes_one_round() {
        let g = Graph::empty(6);
        let r = run_game(&g, 0, &mut FullSetPainter, &mut MaximalIsCorrector, 0, false);
        assert_eq!((r.outcome, r.rounds), (Outcome::CorrectorWins, 1));
    }

    #[test]
    fn random_painter_fixtures() {
        assert!(RandomPainter::new(0.0).is_err());
        assert!(RandomPainter::new(1.5).is_err());
        let mut rp = RandomPainter::new(0.5).unwrap();
        let p4 = first_round(&path(4), &mut rp, 1);
        let c5 = first_round(&cycle(5), &mut rp, 2);
        let g = gnp(100, 0.1, 3).unwrap();
        let big = first_round(&g, &mut rp, 3);
        // Recompute the draws from the same stream.
        let replay = |n: usize, seed: u64| -> Vec<Vertex> {
            let mut rng = stream_rng(seed, crate::rng::PAINTER_STREAM);
            loop {
                let s: Vec<Vertex> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                if !s.is_empty() {
                    return s;
                }
            }
        };
        assert_eq!(p4, replay(4, 1));
        assert_eq!(c5, replay(5, 2));
        assert_eq!(big, replay(100, 3));
        let mut full = RandomPainter::new(1.0).unwrap();
        assert_eq!(first_round(&g, &mut full, 0), (0..100).collect::<Vec<_>>());
        let mut tiny = RandomPainter::new(1e-6).unwrap();
        for seed in 0..20 {
            assert!(!first_round(&path(3), &mut tiny, seed).is_empty());
        }
    }

    #[test]
    fn low_eraser_painter_rules() {
        let g = path(4);
        assert_eq!(first_round(&g, &mut LowEraserPainter, 0), vec![0, 1, 2, 3]);
        let mut s = GameState::with_erasers(&g, vec![1, 0, 0, 2]);
        let mv = LowEraserPainter.present(&s, &mut stream_rng(0, 0));
        assert_eq!(mv, PainterMove::Present(vec![1, 2]));
        s.present(&[1, 2]).unwrap();
        assert!(!s.legal_responses_exist().unwrap());
        let s = GameState::with_erasers(&g, vec![2, 1, 2, 2]);
        assert_eq!(LowEraserPainter.present(&s, &mut stream_rng(0, 0)), PainterMove::Present(vec![0, 1, 2]));
    }

    #[test]
    fn list_adversary_examples() {
        let g = complete(3);
        let mut colour_blind = ListAdversaryPainter::new(vec![vec![1, 2, 3]; 3]).unwrap();
        let mut state = GameState::new(&g, 2);
        for _ in 0..3 {
            match colour_blind.present(&state, &mut stream_rng(0, 0)) {
                PainterMove::Present(s) => {
                    assert_eq!(s, state.remaining_vertices());
                    state.present(&s).unwrap();
                    state.respond(&s[..1]).unwrap();
                }
                PainterMove::Resign => panic!("too early"),
            }
        }
        assert_eq!(colour_blind.present(&state, &mut stream_rng(0, 0)), PainterMove::Resign);

        let one = Graph::empty(1);
        let mut single = ListAdversaryPainter::new(vec![vec![1]]).unwrap();
        let r = run_game(&one, 0, &mut single, &mut MaximalIsCorrector, 0, false);
        assert_eq!((r.outcome, r.rounds), (Outcome::CorrectorWins, 1));
        assert!(ListAdversaryPainter::new(vec![vec![]]).is_err());
    }

    #[test]
    fn k24_witness_beats_maximal_play() {
        let g = complete_bipartite(2, 4);
        let lists = vec![vec![1, 2], vec![3, 4], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]];
        for seed in 0..20 {
            let mut painter = ListAdversaryPainter::new(lists.clone()).unwrap();
            let r = run_game(&g, 1, &mut painter, &mut MaximalIsCorrector, seed, false);
            assert_eq!(r.outcome, Outcome::PainterWins);
        }
    }

    #[test]
    fn list_file_formats() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.json");
        std::fs::write(&a, "[[1,2],[3,4]]").unwrap();
        assert_eq!(read_lists(&a, 2).unwrap(), vec![vec![1, 2], vec![3, 4]]);
        let b = dir.path().join("b.json");
        std::fs::write(&b, r#"{"1": [3, 4], "0": [1, 2]}"#).unwrap();
        assert_eq!(read_lists(&b, 2).unwrap(), vec![vec![1, 2], vec![3, 4]]);
        assert!(read_lists(&b, 1).is_err());
        assert!(read_lists(&a, 3).is_err());
    }
}
