//! Exact transient analysis of the epidemic CTMC on tiny graphs: the ground
//! truth the simulators are validated against.
//!
//! States are base-3 encodings of per-vertex values (base-2 for SIS), so the
//! full configuration space is enumerable only for a handful of vertices;
//! the cap is explicit and the constructor refuses anything larger.

mod solve;
mod uniformization;

pub use solve::mean_extinction;
pub use uniformization::extinction_cdf;

use crate::dynamics::{ModelParams, Variant};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::state::{Configuration, VertexState};

/// Default caps: 3^7 states for the three-state variants, 2^10 for SIS.
pub const DEFAULT_TERNARY_STATE_CAP: u128 = 2187;
pub const DEFAULT_BINARY_STATE_CAP: u128 = 1024;

/// Sparse generator over the full configuration space, with infection-free
/// states marked.
#[derive(Clone, Debug)]
pub struct GeneratorMatrix {
    params: ModelParams,
    n_vertices: usize,
    base: u32,
    n_states: usize,
    /// Off-diagonal entries q(X, Y) > 0, per source state.
    rows: Vec<Vec<(u32, f64)>>,
    /// Diagonal = minus the row's off-diagonal sum.
    diag: Vec<f64>,
    absorbing: Vec<bool>,
}

impl GeneratorMatrix {
    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn row(&self, state: usize) -> &[(u32, f64)] {
        &self.rows[state]
    }

    pub fn diag(&self, state: usize) -> f64 {
        self.diag[state]
    }

    pub fn is_absorbing(&self, state: usize) -> bool {
        self.absorbing[state]
    }

    /// Total probability-mass exit rate of the fastest state.
    pub fn max_exit_rate(&self) -> f64 {
        self.diag.iter().fold(0.0, |acc, &d| acc.max(-d))
    }

    fn vertex_state(&self, state: usize, v: usize) -> VertexState {
        let digit = (state / (self.base as usize).pow(v as u32)) % self.base as usize;
        match digit {
            0 => VertexState::S,
            1 => VertexState::I,
            _ => VertexState::R,
        }
    }

    fn with_vertex(&self, state: usize, v: usize, s: VertexState) -> usize {
        let place = (self.base as usize).pow(v as u32);
        let old = (state / place) % self.base as usize;
        let new = match s {
            VertexState::S => 0,
            VertexState::I => 1,
            VertexState::R => 2,
        };
        state - old * place + new * place
    }

    pub fn index_of(&self, config: &Configuration) -> Result<usize> {
        if config.n() != self.n_vertices {
            return Err(Error::ShapeMismatch(format!(
                "configuration has {} vertices, generator has {}",
                config.n(),
                self.n_vertices
            )));
        }
        let mut idx = 0usize;
        let mut place = 1usize;
        for v in 0..self.n_vertices {
            let digit = match config.state(v as u32) {
                VertexState::S => 0,
                VertexState::I => 1,
                VertexState::R => {
                    if self.base == 2 {
                        return Err(Error::InvalidConfiguration(
                            "SIS configurations cannot contain R".into(),
                        ));
                    }
                    2
                }
            };
            idx += digit * place;
            place *= self.base as usize;
        }
        Ok(idx)
    }

    pub fn config_of(&self, state: usize) -> Configuration {
        Configuration::new(
            (0..self.n_vertices)
                .map(|v| self.vertex_state(state, v))
                .collect(),
        )
    }
}

/// Builds the exact generator for `(g, p)`. Rows hold every nonzero
/// off-diagonal rate; two states are connected only when they differ at one
/// vertex and the move is a legal transition of the variant.
pub fn build_generator(g: &SimpleGraph, p: &ModelParams) -> Result<GeneratorMatrix> {
    let cap = match p.variant {
        Variant::Sis => DEFAULT_BINARY_STATE_CAP,
        _ => DEFAULT_TERNARY_STATE_CAP,
    };
    build_generator_with_cap(g, p, cap)
}

pub fn build_generator_with_cap(
    g: &SimpleGraph,
    p: &ModelParams,
    cap: u128,
) -> Result<GeneratorMatrix> {
    let base: u32 = if p.variant == Variant::Sis { 2 } else { 3 };
    let n = g.n();
    let states_exact = (base as u128)
        .checked_pow(n as u32)
        .ok_or(Error::StateCapExceeded {
            states: u128::MAX,
            cap,
        })?;
    if states_exact > cap {
        return Err(Error::StateCapExceeded {
            states: states_exact,
            cap,
        });
    }
    let n_states = states_exact as usize;
    let mut gen = GeneratorMatrix {
        params: *p,
        n_vertices: n,
        base,
        n_states,
        rows: vec![Vec::new(); n_states],
        diag: vec![0.0; n_states],
        absorbing: vec![false; n_states],
    };
    let rho = p.effective_rho();
    for state in 0..n_states {
        let mut infected_mask = 0u64;
        let mut any_infected = false;
        for v in 0..n {
            if gen.vertex_state(state, v) == VertexState::I {
                infected_mask |= 1 << v;
                any_infected = true;
            }
        }
        gen.absorbing[state] = !any_infected;
        let mut exit = 0.0;
        for v in 0..n {
            match gen.vertex_state(state, v) {
                VertexState::S => {
                    let infected_nbrs = g
                        .neighbors(v as u32)
                        .iter()
                        .filter(|&&u| infected_mask & (1 << u) != 0)
                        .count();
                    let rate = match p.variant {
                        Variant::ThresholdSirs => {
                            if infected_nbrs > 0 {
                                p.lambda
                            } else {
                                0.0
                            }
                        }
                        _ => p.lambda * infected_nbrs as f64,
                    };
                    if rate > 0.0 {
                        let target = gen.with_vertex(state, v, VertexState::I);
                        gen.rows[state].push((target as u32, rate));
                        exit += rate;
                    }
                }
                VertexState::I => {
                    let target = gen.with_vertex(state, v, p.recovery_target());
                    gen.rows[state].push((target as u32, 1.0));
                    exit += 1.0;
                }
                VertexState::R => {
                    if rho > 0.0 {
                        let target = gen.with_vertex(state, v, VertexState::S);
                        gen.rows[state].push((target as u32, rho));
                        exit += rho;
                    }
                }
            }
        }
        gen.diag[state] = -exit;
    }
    Ok(gen)
}
