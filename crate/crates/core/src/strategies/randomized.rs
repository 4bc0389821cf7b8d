use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng as _;

use super::{classify_set, finish_keep, Regime, SetClass, StrategyError, StrategyParams};
use crate::game::{Corrector, CorrectorDiagnostics, GameState};
use crate::graph::{Graph, Vertex};
use crate::indset::{
    ceil_tol, find_independent_of_size, k0, medium_partition_dense, medium_partition_typed, type_weights, Partition,
};
use crate::rng::Rng;

/// Values fixed when a randomized corrector is built for a graph.
#[derive(Clone, Debug)]
struct Setup {
    n: usize,
    p: f64,
    omega: f64,
    large_target: usize,
    attempts: usize,
    strict: bool,
    redraw_empty: bool,
}

impl Setup {
    fn new(g: &Graph, params: &StrategyParams, regime: Regime) -> Result<Self, StrategyError> {
        params.validate()?;
        let n = g.n();
        let p = params.resolve_p(g);
        let omega = StrategyParams { regime, ..params.clone() }.resolve_omega(n);
        let large_target = match regime {
            Regime::Dense => match k0(n.max(1), p).map_err(|e| StrategyError::Param(e.to_string()))? {
                Some(k) => k,
                None => ceil_tol(2.0 * (n as f64 * p).ln() / -(-p).ln_1p()),
            },
            _ => {
                let eps = params.epsilon;
                ceil_tol(eps * (1.0 - eps) * (n as f64 * p).ln() / (3.0 * p))
            }
        }
        .max(1);
        Ok(Setup {
            n,
            p,
            omega,
            large_target,
            attempts: params.extraction_attempts,
            strict: params.strict,
            redraw_empty: params.redraw_empty,
        })
    }
}

fn pick<T: Clone>(items: &[T], rng: &mut Rng) -> Option<T> {
    if items.is_empty() {
        None
    } else {
        Some(items[rng.gen_range(0..items.len())].clone())
    }
}

/// Shared round logic: classify, choose an anchor set, finish, account.
fn respond_with(
    setup: &Setup,
    diag: &mut CorrectorDiagnostics,
    state: &GameState<'_>,
    rng: &mut Rng,
    medium: impl FnOnce(&Setup, &Graph, &[Vertex], &mut Rng, &mut CorrectorDiagnostics) -> Vec<Vertex>,
) -> Vec<Vertex> {
    let g = state.graph();
    let set = state.pending();
    let class = classify_set(set.len(), setup.n, setup.p, setup.omega);
    let anchor = match class {
        SetClass::Large => {
            let (found, report) = find_independent_of_size(g, set, setup.large_target, setup.attempts, rng);
            if report.fallback {
                diag.extraction_fallbacks += 1;
            }
            found
        }
        SetClass::Small => pick(set, rng).into_iter().collect(),
        SetClass::Medium => medium(setup, g, set, rng, diag),
    };
    let keep = finish_keep(g, set, &state.forced_keeps(), &anchor, setup.strict);
    let erased = (set.len() - keep.len()) as u64;
    match class {
        SetClass::Small => {
            diag.small_rounds += 1;
            diag.small_erasers += erased;
        }
        SetClass::Medium => {
            diag.medium_rounds += 1;
            diag.medium_erasers += erased;
        }
        SetClass::Large => {
            diag.large_rounds += 1;
            diag.large_erasers += erased;
            diag.min_large_keep = Some(diag.min_large_keep.map_or(keep.len(), |m| m.min(keep.len())));
        }
    }
    keep
}

fn parts_of(partition: &Partition, kind: usize) -> Vec<&Vec<Vertex>> {
    partition.parts_of_type(kind).map(|p| &p.vertices).collect()
}

/// Corrector for constant `p`: an independent set of size `k0` on large
/// sets, one random vertex on small sets, and on medium sets a fair coin
/// between a random part of the medium partition and a random leftover
/// vertex.
#[derive(Clone, Debug)]
pub struct DenseCorrector {
    setup: Setup,
    diag: CorrectorDiagnostics,
}

impl DenseCorrector {
    pub fn new(g: &Graph, params: &StrategyParams) -> Result<Self, StrategyError> {
        Ok(DenseCorrector { setup: Setup::new(g, params, Regime::Dense)?, diag: CorrectorDiagnostics::default() })
    }

    pub fn large_target(&self) -> usize {
        self.setup.large_target
    }

    pub fn omega(&self) -> f64 {
        self.setup.omega
    }
}

fn dense_medium(setup: &Setup, g: &Graph, set: &[Vertex], rng: &mut Rng, diag: &mut CorrectorDiagnostics) -> Vec<Vertex> {
    let partition = medium_partition_dense(g, set, setup.p, setup.attempts, rng);
    if partition.fallback {
        diag.partition_fallbacks += 1;
    }
    let parts = parts_of(&partition, 0);
    loop {
        let chosen = if rng.gen_bool(0.5) {
            pick(&parts, rng).cloned()
        } else {
            pick(&partition.leftover, rng).map(|v| vec![v])
        };
        match chosen {
            Some(c) => return c,
            None => {
                diag.empty_draws += 1;
                if !setup.redraw_empty {
                    return Vec::new();
                }
            }
        }
    }
}

impl Corrector for DenseCorrector {
    fn name(&self) -> String {
        "dense".into()
    }

    fn respond(&mut self, state: &GameState<'_>, rng: &mut Rng) -> Vec<Vertex> {
        respond_with(&self.setup, &mut self.diag, state, rng, dense_medium)
    }

    fn diagnostics(&self) -> Option<CorrectorDiagnostics> {
        Some(self.diag.clone())
    }
}

/// Corrector for `p = o(1)`: large sets target `eps(1-eps) ln(np)/(3p)`;
/// medium sets use the typed partition and pick one of three groups
/// (fixed-size parts, typed parts weighted by `q_i`, leftover vertex).
#[derive(Clone, Debug)]
pub struct SparseCorrector {
    setup: Setup,
    diag: CorrectorDiagnostics,
}

impl SparseCorrector {
    pub fn new(g: &Graph, params: &StrategyParams) -> Result<Self, StrategyError> {
        Ok(SparseCorrector { setup: Setup::new(g, params, Regime::Sparse)?, diag: CorrectorDiagnostics::default() })
    }

    pub fn large_target(&self) -> usize {
        self.setup.large_target
    }
}

/// One group/type draw from a typed partition; `None` when the drawn class is empty.
pub(crate) fn typed_draw(partition: &Partition, rng: &mut Rng) -> Option<Vec<Vertex>> {
    match rng.gen_range(0..3) {
        0 => pick(&parts_of(partition, 0), rng).cloned(),
        1 => {
            let weights = type_weights(partition.max_type).ok()?;
            let dist = WeightedIndex::new(&weights).expect("weights are positive");
            let kind = dist.sample(rng) + 1;
            pick(&parts_of(partition, kind), rng).cloned()
        }
        _ => pick(&partition.leftover, rng).map(|v| vec![v]),
    }
}

fn sparse_medium(setup: &Setup, g: &Graph, set: &[Vertex], rng: &mut Rng, diag: &mut CorrectorDiagnostics) -> Vec<Vertex> {
    let partition = medium_partition_typed(g, set, setup.p, setup.omega, setup.attempts, rng);
    if partition.fallback {
        diag.partition_fallbacks += 1;
    }
    loop {
        match typed_draw(&partition, rng) {
            Some(c) => return c,
            None => {
                diag.empty_draws += 1;
                if !setup.redraw_empty {
                    return Vec::new();
                }
            }
        }
    }
}

impl Corrector for SparseCorrector {
    fn name(&self) -> String {
        "sparse".into()
    }

    fn respond(&mut self, state: &GameState<'_>, rng: &mut Rng) -> Vec<Vertex> {
        respond_with(&self.setup, &mut self.diag, state, rng, sparse_medium)
    }

    fn diagnostics(&self) -> Option<CorrectorDiagnostics> {
        Some(self.diag.clone())
    }
}

/// Keeps a maximal independent set: forced vertices first, then the rest in
/// a seeded random order.
#[derive(Clone, Debug, Default)]
pub struct MaximalIsCorrector;

impl Corrector for MaximalIsCorrector {
    fn name(&self) -> String {
        "maximal-is".into()
    }

    fn respond(&mut self, state: &GameState<'_>, rng: &mut Rng) -> Vec<Vertex> {
        let mut order = state.pending().to_vec();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
        finish_keep(state.graph(), &order, &state.forced_keeps(), &[], false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{run_game, Outcome};
    use crate::graph::{complete, gnp, Graph};
    use crate::indset::Part;
    use crate::rng::stream_rng;
    use crate::strategies::FullSetPainter;

    #[test]
    fn edgeless_graph_is_kept_whole() {
        let g = Graph::empty(12);
        let mut c = DenseCorrector::new(&g, &StrategyParams::default()).unwrap();
        let mut state = GameState::new(&g, 0);
        let all: Vec<usize> = (0..12).collect();
        state.present(&all).unwrap();
        let mut keep = c.respond(&state, &mut stream_rng(0, 0));
        keep.sort_unstable();
        assert_eq!(keep, all);
    }

    #[test]
    fn singleton_is_kept() {
        let g = gnp(200, 0.5, 3).unwrap();
        let mut state = GameState::new(&g, 3);
        state.present(&[17]).unwrap();
        let mut d = DenseCorrector::new(&g, &StrategyParams::default()).unwrap();
        assert_eq!(d.respond(&state, &mut stream_rng(1, 1)), vec![17]);
        let sp = StrategyParams { regime: Regime::Sparse, ..Default::default() };
        let mut s = SparseCorrector::new(&g, &sp).unwrap();
        assert_eq!(s.respond(&state, &mut stream_rng(1, 1)), vec![17]);
    }

    #[test]
    fn complete_graph_takes_n_rounds() {
        let n = 8;
        let g = complete(n);
        let mut c = DenseCorrector::new(&g, &StrategyParams::default()).unwrap();
        let r = run_game(&g, n as u32 - 1, &mut FullSetPainter, &mut c, 5, false);
        assert_eq!(r.outcome, Outcome::CorrectorWins);
        assert_eq!(r.rounds, n);
    }

    #[test]
    fn large_targets() {
        let g = gnp(2000, 0.5, 1).unwrap();
        let p = StrategyParams { p: Some(0.5), ..Default::default() };
        assert_eq!(DenseCorrector::new(&g, &p).unwrap().large_target(), k0(2000, 0.5).unwrap().unwrap());
        let small = gnp(40, 0.5, 1).unwrap();
        // k0 is undefined at n = 40, so the target is ceil(2 log2 20) = 9.
        assert_eq!(DenseCorrector::new(&small, &p).unwrap().large_target(), 9);
        let sp = StrategyParams { p: Some(0.01), regime: Regime::Sparse, ..Default::default() };
        let want = (0.1 * 0.9 * 20f64.ln() / 0.03).ceil() as usize;
        assert_eq!(SparseCorrector::new(&g, &sp).unwrap().large_target(), want);
    }

    #[test]
    fn typed_draw_frequencies() {
        // One leftover vertex and no parts: groups 0 and 1 draw nothing.
        let only_j = Partition { parts: vec![], leftover: vec![5], max_type: 0, s0: 1.0, fallback: false };
        let mut rng = stream_rng(9, 0);
        let trials = 30_000;
        let hits = (0..trials).filter(|_| typed_draw(&only_j, &mut rng).is_some()).count();
        let rate = hits as f64 / trials as f64;
        assert!((rate - 1.0 / 3.0).abs() < 0.015, "rate {rate}");

        // Types {1: three parts, 2: one part}; given group 1, each type-1 part has probability 2/9.
        let part = |v: usize, kind| Part { vertices: vec![v], kind };
        let typed = Partition {
            parts: vec![part(0, 1), part(1, 1), part(2, 1), part(3, 2)],
            leftover: vec![],
            max_type: 2,
            s0: 1.0,
            fallback: false,
        };
        let mut counts = [0usize; 4];
        for _ in 0..trials {
            if let Some(v) = typed_draw(&typed, &mut rng) {
                counts[v[0]] += 1;
            }
        }
        let group1 = counts.iter().sum::<usize>() as f64;
        assert!((group1 / trials as f64 - 1.0 / 3.0).abs() < 0.015);
        for (i, want) in [2.0 / 9.0, 2.0 / 9.0, 2.0 / 9.0, 1.0 / 3.0].into_iter().enumerate() {
            let got = counts[i] as f64 / group1;
            assert!((got - want).abs() < 0.025, "part {i}: {got} vs {want}");
        }
    }

    #[test]
    fn responses_are_legal_and_accounted() {
        let g = gnp(300, 0.3, 4).unwrap();
        let params = StrategyParams { p: Some(0.3), ..Default::default() };
        let mut c = DenseCorrector::new(&g, &params).unwrap();
        let r = run_game(&g, 300, &mut FullSetPainter, &mut c, 2, false);
        assert_eq!(r.outcome, Outcome::CorrectorWins);
        let d = c.diagnostics().unwrap();
        assert_eq!(d.small_erasers + d.medium_erasers + d.large_erasers, r.total_erasers_used);
        assert_eq!(d.small_rounds + d.medium_rounds + d.large_rounds, r.rounds);
        if let Some(m) = d.min_large_keep {
            assert!(d.large_rounds <= 300_usize.div_ceil(m));
        }
    }
}
