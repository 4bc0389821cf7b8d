//! Simulation and exact analysis of the Paint–Correct game on graphs.

// `!(x > 0.0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod game;
pub mod graph;
pub mod indset;
pub mod rng;
pub mod theory;
pub mod exact;
pub mod strategies;
pub mod experiment;
