use std::path::Path;

use super::{
    read_lists, tree_corrector, unicyclic_corrector, DenseCorrector, FullSetPainter, ListAdversaryPainter,
    LowEraserPainter, MaximalIsCorrector, RandomPainter, Regime, SparseCorrector, StrategyError, StrategyParams,
    VerySparseCorrector,
};
use crate::exact::{OptimalPainter, SolverConfig, SolverCorrector};
use crate::game::{Corrector, Painter};
use crate::graph::Graph;

pub const CORRECTOR_NAMES: &[&str] = &["dense", "sparse", "very-sparse", "tree", "unicyclic", "maximal-is", "solver"];

pub const PAINTER_NAMES: &[&str] = &["full-set", "random:<q>", "low-eraser", "list:<file>", "optimal"];

/// Checks a corrector name without building anything.
pub fn check_corrector_name(name: &str) -> Result<(), StrategyError> {
    if CORRECTOR_NAMES.contains(&name) {
        Ok(())
    } else {
        Err(StrategyError::UnknownName(name.to_string()))
    }
}

/// Checks a painter name (and a `random:` probability) without building anything.
pub fn check_painter_name(name: &str) -> Result<(), StrategyError> {
    match name.split_once(':') {
        Some(("random", q)) => parse_q(q).map(|_| ()),
        Some(("list", file)) if !file.is_empty() => Ok(()),
        None if ["full-set", "low-eraser", "optimal", "random"].contains(&name) => Ok(()),
        _ => Err(StrategyError::UnknownName(name.to_string())),
    }
}

fn parse_q(q: &str) -> Result<f64, StrategyError> {
    let q: f64 = q.parse().map_err(|_| StrategyError::Param(format!("bad probability {q:?}")))?;
    RandomPainter::new(q).map(|_| q)
}

pub fn corrector_by_name(name: &str, g: &Graph, params: &StrategyParams) -> Result<Box<dyn Corrector>, StrategyError> {
    Ok(match name {
        "dense" => Box::new(DenseCorrector::new(g, params)?),
        "sparse" => Box::new(SparseCorrector::new(g, &StrategyParams { regime: Regime::Sparse, ..params.clone() })?),
        "very-sparse" => Box::new(VerySparseCorrector::new(g, params)?),
        "tree" => Box::new(tree_corrector(g)?),
        "unicyclic" => Box::new(unicyclic_corrector(g)?),
        "maximal-is" => Box::new(MaximalIsCorrector),
        "solver" => Box::new(SolverCorrector::new(g, &SolverConfig::default())?),
        _ => return Err(StrategyError::UnknownName(name.to_string())),
    })
}

/// `random` alone means `random:0.5`; `optimal` is the best-effort solver
/// painter; `list:<file>` reads the lists relative to the working directory.
pub fn painter_by_name(name: &str, g: &Graph) -> Result<Box<dyn Painter>, StrategyError> {
    if let Some((kind, arg)) = name.split_once(':') {
        return match kind {
            "random" => Ok(Box::new(RandomPainter::new(parse_q(arg)?)?)),
            "list" => Ok(Box::new(ListAdversaryPainter::new(read_lists(Path::new(arg), g.n())?)?)),
            _ => Err(StrategyError::UnknownName(name.to_string())),
        };
    }
    Ok(match name {
        "full-set" => Box::new(FullSetPainter),
        "random" => Box::new(RandomPainter::new(0.5)?),
        "low-eraser" => Box::new(LowEraserPainter),
        "optimal" => Box::new(OptimalPainter::best_effort(g, &SolverConfig::default())?),
        _ => return Err(StrategyError::UnknownName(name.to_string())),
    })
}
