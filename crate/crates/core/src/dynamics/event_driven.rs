//! Rejection-free jump-chain sampler.
//!
//! Every vertex carries its current aggregate transition rate (lambda times
//! its infected-neighbor count when susceptible, 1 when infected, rho when
//! recovered). A Fenwick tree over these rates supports O(log n) total-rate
//! sampling; holding times are exponentials of the current total. Equal in
//! law to the mark-stream engine.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::rng::{op_rng, Domain};
use crate::state::{Configuration, VertexState};

use super::{Event, ModelParams, Trajectory, Variant};

/// Prefix-summable rate table with weighted index sampling.
struct RateTree {
    tree: Vec<f64>,
    rates: Vec<f64>,
    mask: usize,
    updates_since_rebuild: usize,
}

const REBUILD_INTERVAL: usize = 1 << 22;

impl RateTree {
    fn new(rates: Vec<f64>) -> Self {
        let n = rates.len();
        let mut mask = 1usize;
        while mask * 2 <= n {
            mask *= 2;
        }
        let mut t = RateTree {
            tree: vec![0.0; n + 1],
            rates,
            mask,
            updates_since_rebuild: 0,
        };
        t.rebuild();
        t
    }

    fn rebuild(&mut self) {
        self.tree.iter_mut().for_each(|x| *x = 0.0);
        for i in 0..self.rates.len() {
            let mut idx = i + 1;
            while idx < self.tree.len() {
                self.tree[idx] += self.rates[i];
                idx += idx & idx.wrapping_neg();
            }
        }
        self.updates_since_rebuild = 0;
    }

    fn set(&mut self, i: usize, rate: f64) {
        let delta = rate - self.rates[i];
        if delta == 0.0 {
            return;
        }
        self.rates[i] = rate;
        let mut idx = i + 1;
        while idx < self.tree.len() {
            self.tree[idx] += delta;
            idx += idx & idx.wrapping_neg();
        }
        // rounding drift accumulates in interior nodes; refresh periodically
        self.updates_since_rebuild += 1;
        if self.updates_since_rebuild >= REBUILD_INTERVAL {
            self.rebuild();
        }
    }

    fn total(&self) -> f64 {
        let mut sum = 0.0;
        let mut idx = self.rates.len();
        while idx > 0 {
            sum += self.tree[idx];
            idx -= idx & idx.wrapping_neg();
        }
        sum
    }

    /// Index of the vertex owning the point `target` of the cumulative rate
    /// line. `target` must lie in `[0, total)`.
    fn sample(&self, mut target: f64) -> usize {
        let n = self.rates.len();
        let mut idx = 0usize;
        let mut bit = self.mask;
        while bit > 0 {
            let next = idx + bit;
            if next <= n && self.tree[next] <= target {
                target -= self.tree[next];
                idx = next;
            }
            bit >>= 1;
        }
        // idx elements have cumulative sum <= target; the answer is idx
        // (0-based), nudged off zero-rate entries that float error can hit
        let mut i = idx.min(n - 1);
        while self.rates[i] == 0.0 && i + 1 < n {
            i += 1;
        }
        while self.rates[i] == 0.0 && i > 0 {
            i -= 1;
        }
        i
    }
}

/// Stepwise event-driven simulator. [`simulate_event_driven`] wraps the
/// common run-to-horizon loop; the engine itself is public so callers can
/// drive a fixed number of transitions (throughput measurement, custom
/// stopping rules).
pub struct EventEngine<'g> {
    graph: &'g SimpleGraph,
    params: ModelParams,
    config: Configuration,
    inf_nbrs: Vec<u32>,
    rates: RateTree,
    time: f64,
    infected: usize,
    rng: ChaCha8Rng,
}

impl<'g> EventEngine<'g> {
    pub fn new(
        g: &'g SimpleGraph,
        p: &ModelParams,
        init: &Configuration,
        seed: u64,
    ) -> Result<Self> {
        if init.n() != g.n() {
            return Err(Error::ShapeMismatch(format!(
                "initial configuration has {} vertices, graph has {}",
                init.n(),
                g.n()
            )));
        }
        if p.variant == Variant::Sis && init.contains_recovered() {
            return Err(Error::InvalidConfiguration(
                "SIS configurations cannot contain R".into(),
            ));
        }
        let n = g.n();
        let mut inf_nbrs = vec![0u32; n];
        for v in 0..n as u32 {
            if init.is_infected(v) {
                for &u in g.neighbors(v) {
                    inf_nbrs[u as usize] += 1;
                }
            }
        }
        let rates: Vec<f64> = (0..n as u32)
            .map(|v| vertex_rate(p, init.state(v), inf_nbrs[v as usize]))
            .collect();
        Ok(EventEngine {
            graph: g,
            params: *p,
            infected: init.infected_count(),
            config: init.clone(),
            inf_nbrs,
            rates: RateTree::new(rates),
            time: 0.0,
            rng: op_rng(Domain::EventEngine, seed),
        })
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn infected(&self) -> usize {
        self.infected
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    /// Samples and applies the next transition. `None` once the infection is
    /// extinct: the run stops there and later immunity-waning flips are not
    /// generated.
    pub fn next_event(&mut self) -> Option<Event> {
        if self.infected == 0 {
            return None;
        }
        let total = self.rates.total();
        debug_assert!(total > 0.0);
        self.time += self.rng.sample::<f64, _>(Exp1) / total;
        let target = self.rng.random::<f64>() * total;
        let v = self.rates.sample(target.min(total * (1.0 - 1e-16))) as u32;

        let from = self.config.state(v);
        let to = match from {
            VertexState::S => VertexState::I,
            VertexState::I => self.params.recovery_target(),
            VertexState::R => VertexState::S,
        };
        self.apply(v, from, to);
        Some(Event {
            time: self.time,
            vertex: v,
            from,
            to,
        })
    }

    fn apply(&mut self, v: u32, from: VertexState, to: VertexState) {
        self.config.set(v, to);
        let p = self.params;
        if from == VertexState::I {
            self.infected -= 1;
            for &u in self.graph.neighbors(v) {
                self.inf_nbrs[u as usize] -= 1;
                if self.config.state(u) == VertexState::S {
                    let r = vertex_rate(&p, VertexState::S, self.inf_nbrs[u as usize]);
                    self.rates.set(u as usize, r);
                }
            }
        }
        if to == VertexState::I {
            self.infected += 1;
            for &u in self.graph.neighbors(v) {
                self.inf_nbrs[u as usize] += 1;
                if self.config.state(u) == VertexState::S {
                    let r = vertex_rate(&p, VertexState::S, self.inf_nbrs[u as usize]);
                    self.rates.set(u as usize, r);
                }
            }
        }
        let own = vertex_rate(&p, to, self.inf_nbrs[v as usize]);
        self.rates.set(v as usize, own);
    }
}

fn vertex_rate(p: &ModelParams, state: VertexState, inf_nbrs: u32) -> f64 {
    match state {
        VertexState::S => match p.variant {
            Variant::ThresholdSirs => {
                if inf_nbrs > 0 {
                    p.lambda
                } else {
                    0.0
                }
            }
            _ => p.lambda * inf_nbrs as f64,
        },
        VertexState::I => 1.0,
        VertexState::R => p.effective_rho(),
    }
}

/// Samples the jump chain with exponential holding times from the exact rate
/// table, recording every transition up to `horizon`. Early-exits at
/// extinction; `censored` is set iff infection is still alive at the horizon.
/// Deterministic given `(g, p, init, horizon, seed)`.
pub fn simulate_event_driven(
    g: &SimpleGraph,
    p: &ModelParams,
    init: &Configuration,
    horizon: f64,
    seed: u64,
) -> Result<Trajectory> {
    if !(horizon > 0.0) {
        return Err(Error::ParamOutOfRange {
            name: "horizon",
            value: horizon,
            requirement: "> 0",
        });
    }
    let mut engine = EventEngine::new(g, p, init, seed)?;
    let mut events = Vec::new();
    let censored = loop {
        match engine.next_event() {
            Some(e) if e.time <= horizon => events.push(e),
            Some(_) => break true, // infection was alive when the horizon passed
            None => break false,
        }
    };
    Ok(Trajectory {
        initial: init.clone(),
        events,
        horizon,
        censored,
    })
}
