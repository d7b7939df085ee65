//! Simulation and exact analysis of SIRS-family epidemics on power-law
//! configuration-model graphs.
//!
//! The crate has three layers:
//!
//! * graph machinery: power-law degree sampling, uniform half-edge pairing,
//!   simple projection, diameter, and degree-regularity diagnostics;
//! * dynamics: a mark-stream (Harris) engine and an event-driven engine for
//!   SIRS, SIS, SIR, and threshold-SIRS, distribution-equivalent and
//!   deterministic given a seed, plus an exact CTMC oracle for tiny graphs;
//! * structure and experiments: hierarchical-star planting/extraction, lit
//!   predicates, survival observables, and a declarative experiment runner.
//!
//! Replicate loops are data-parallel through rayon by default; disabling the
//! `parallel` feature swaps in sequential fallbacks with identical output.

pub mod error;
pub mod graph;
pub mod observables;
pub mod parallel;
pub mod rng;
pub mod state;

pub mod dynamics;
pub mod oracle;
pub mod structures;

pub use error::{Error, Result};
