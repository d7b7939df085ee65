//! Mark-stream construction and pathwise evolution.
//!
//! Every vertex carries a recovery clock (rate 1) and a waning clock (rate
//! rho); every directed edge carries an infection clock (rate lambda). The
//! threshold variant replaces the edge clocks with one rate-lambda clock per
//! vertex. A mark only acts when the guard of its rule holds at the mark
//! time's left limit; all other marks are no-ops.

use rand::Rng;
use rand_distr::Exp1;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::rng::{op_rng, Domain};
use crate::state::{Configuration, VertexState};

use super::{Event, ModelParams, Trajectory, Variant};

/// Marks an engine refuses to materialize beyond this expected count;
/// the event-driven engine has no such limit.
pub const DEFAULT_MARK_BUDGET: f64 = 5e7;

/// Infection clocks: one per directed edge, or one per vertex for the
/// threshold variant.
#[derive(Clone, Debug)]
pub enum InfectionMarks {
    /// Indexed by directed edge id: edge `e = (u, v)` in the host graph's
    /// edge order owns ids `2e` (u to v) and `2e + 1` (v to u).
    PerDirectedEdge(Vec<Vec<f64>>),
    /// Indexed by vertex.
    PerVertex(Vec<Vec<f64>>),
}

/// Poisson mark lists for one realization on `[0, horizon]`.
#[derive(Clone, Debug)]
pub struct HarrisStream {
    pub(crate) n: usize,
    pub(crate) m: usize,
    pub(crate) params: ModelParams,
    pub(crate) horizon: f64,
    pub seed: u64,
    pub rec: Vec<Vec<f64>>,
    pub sus: Vec<Vec<f64>>,
    pub inf: InfectionMarks,
}

impl HarrisStream {
    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    /// Assembles a stream from explicit mark lists; the route unit tests use
    /// to pin rule-level behavior. Lists must be sorted and within the
    /// horizon.
    pub fn from_parts(
        g: &SimpleGraph,
        params: ModelParams,
        horizon: f64,
        rec: Vec<Vec<f64>>,
        sus: Vec<Vec<f64>>,
        inf: InfectionMarks,
    ) -> Result<Self> {
        let n = g.n();
        let inf_shape_ok = match (&inf, params.variant) {
            (InfectionMarks::PerDirectedEdge(lists), v) if v != Variant::ThresholdSirs => {
                lists.len() == 2 * g.m()
            }
            (InfectionMarks::PerVertex(lists), Variant::ThresholdSirs) => lists.len() == n,
            _ => false,
        };
        if rec.len() != n || sus.len() != n || !inf_shape_ok {
            return Err(Error::ShapeMismatch(
                "mark list counts do not match the graph and variant".into(),
            ));
        }
        let sorted = |lists: &[Vec<f64>]| {
            lists.iter().all(|l| {
                l.windows(2).all(|w| w[0] < w[1])
                    && l.iter().all(|&t| t >= 0.0 && t <= horizon)
            })
        };
        let inf_lists = match &inf {
            InfectionMarks::PerDirectedEdge(l) | InfectionMarks::PerVertex(l) => l.as_slice(),
        };
        if !sorted(&rec) || !sorted(&sus) || !sorted(inf_lists) {
            return Err(Error::ShapeMismatch(
                "mark lists must be strictly increasing within [0, horizon]".into(),
            ));
        }
        Ok(HarrisStream {
            n,
            m: g.m(),
            params,
            horizon,
            seed: 0,
            rec,
            sus,
            inf,
        })
    }
}

fn poisson_marks(rng: &mut impl Rng, rate: f64, horizon: f64) -> Vec<f64> {
    let mut marks = Vec::new();
    if rate <= 0.0 {
        return marks;
    }
    let mut t: f64 = rng.sample::<f64, _>(Exp1) / rate;
    while t <= horizon {
        marks.push(t);
        t += rng.sample::<f64, _>(Exp1) / rate;
    }
    marks
}

/// Expected total mark count for the stream `(g, p, horizon)` would need.
pub fn expected_mark_count(g: &SimpleGraph, p: &ModelParams, horizon: f64) -> f64 {
    let n = g.n() as f64;
    let infection = match p.variant {
        Variant::ThresholdSirs => n * p.lambda,
        _ => 2.0 * g.m() as f64 * p.lambda,
    };
    (n * (1.0 + p.effective_rho()) + infection) * horizon
}

/// Draws all mark lists for one realization. Deterministic given
/// `(g, p, horizon, seed)`. Refuses workloads whose expected mark count
/// exceeds [`DEFAULT_MARK_BUDGET`].
pub fn build_harris_stream(
    g: &SimpleGraph,
    p: &ModelParams,
    horizon: f64,
    seed: u64,
) -> Result<HarrisStream> {
    build_harris_stream_with_budget(g, p, horizon, seed, DEFAULT_MARK_BUDGET)
}

pub fn build_harris_stream_with_budget(
    g: &SimpleGraph,
    p: &ModelParams,
    horizon: f64,
    seed: u64,
    budget: f64,
) -> Result<HarrisStream> {
    if !(horizon > 0.0) {
        return Err(Error::ParamOutOfRange {
            name: "horizon",
            value: horizon,
            requirement: "> 0",
        });
    }
    let expected = expected_mark_count(g, p, horizon);
    if expected > budget {
        return Err(Error::MarkBudgetExceeded { expected, budget });
    }
    let mut rng = op_rng(Domain::HarrisMarks, seed);
    let n = g.n();
    let rec = (0..n).map(|_| poisson_marks(&mut rng, 1.0, horizon)).collect();
    let rho = p.effective_rho();
    let sus = (0..n).map(|_| poisson_marks(&mut rng, rho, horizon)).collect();
    let inf = match p.variant {
        Variant::ThresholdSirs => InfectionMarks::PerVertex(
            (0..n)
                .map(|_| poisson_marks(&mut rng, p.lambda, horizon))
                .collect(),
        ),
        _ => InfectionMarks::PerDirectedEdge(
            (0..2 * g.m())
                .map(|_| poisson_marks(&mut rng, p.lambda, horizon))
                .collect(),
        ),
    };
    Ok(HarrisStream {
        n,
        m: g.m(),
        params: *p,
        horizon,
        seed,
        rec,
        sus,
        inf,
    })
}

#[derive(Clone, Copy, PartialEq)]
struct Mark {
    time: f64,
    /// rec < sus < inf; the documented tie order for replay stability.
    kind: u8,
    source: u32,
    target: u32,
}

/// Applies the stream's marks in global time order under the rules
/// (i) a rec mark turns I into R (into S for SIS), (ii) a sus mark turns R
/// into S, (iii) an inf mark on a directed edge infects a susceptible target
/// iff the source is infected at the left limit (threshold: a vertex inf
/// mark infects a susceptible vertex iff it has an infected neighbor).
/// Ineffective marks do nothing. Marks are applied through the whole
/// horizon; `censored` reports whether infection is still alive there.
pub fn evolve_harris(
    g: &SimpleGraph,
    p: &ModelParams,
    init: &Configuration,
    stream: &HarrisStream,
) -> Result<Trajectory> {
    if stream.n != g.n() || stream.m != g.m() {
        return Err(Error::ShapeMismatch(format!(
            "stream built for (n = {}, m = {}), graph has (n = {}, m = {})",
            stream.n,
            stream.m,
            g.n(),
            g.m()
        )));
    }
    if stream.params != *p {
        return Err(Error::ShapeMismatch(
            "stream was built for different model parameters".into(),
        ));
    }
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

    let mut marks: Vec<Mark> = Vec::new();
    for (v, list) in stream.rec.iter().enumerate() {
        marks.extend(list.iter().map(|&time| Mark {
            time,
            kind: 0,
            source: v as u32,
            target: v as u32,
        }));
    }
    for (v, list) in stream.sus.iter().enumerate() {
        marks.extend(list.iter().map(|&time| Mark {
            time,
            kind: 1,
            source: v as u32,
            target: v as u32,
        }));
    }
    match &stream.inf {
        InfectionMarks::PerDirectedEdge(lists) => {
            for (id, list) in lists.iter().enumerate() {
                let (u, v) = g.edges()[id / 2];
                let (source, target) = if id % 2 == 0 { (u, v) } else { (v, u) };
                marks.extend(list.iter().map(|&time| Mark {
                    time,
                    kind: 2,
                    source,
                    target,
                }));
            }
        }
        InfectionMarks::PerVertex(lists) => {
            for (v, list) in lists.iter().enumerate() {
                marks.extend(list.iter().map(|&time| Mark {
                    time,
                    kind: 2,
                    source: v as u32,
                    target: v as u32,
                }));
            }
        }
    }
    marks.sort_unstable_by(|a, b| {
        a.time
            .total_cmp(&b.time)
            .then(a.kind.cmp(&b.kind))
            .then(a.source.cmp(&b.source))
            .then(a.target.cmp(&b.target))
    });

    let mut config = init.clone();
    let mut inf_nbrs = vec![0u32; g.n()];
    for v in 0..g.n() as u32 {
        if config.is_infected(v) {
            for &u in g.neighbors(v) {
                inf_nbrs[u as usize] += 1;
            }
        }
    }
    let mut infected = config.infected_count();
    let mut events = Vec::new();
    let threshold = p.variant == Variant::ThresholdSirs;

    for mark in &marks {
        let transition = match mark.kind {
            0 => {
                let v = mark.source;
                (config.state(v) == VertexState::I).then(|| (v, p.recovery_target()))
            }
            1 => {
                let v = mark.source;
                (config.state(v) == VertexState::R).then_some((v, VertexState::S))
            }
            _ => {
                let v = mark.target;
                let guard = if threshold {
                    inf_nbrs[v as usize] > 0
                } else {
                    config.is_infected(mark.source)
                };
                (config.state(v) == VertexState::S && guard).then_some((v, VertexState::I))
            }
        };
        let Some((v, to)) = transition else { continue };
        let from = config.state(v);
        config.set(v, to);
        if from == VertexState::I {
            infected -= 1;
            for &u in g.neighbors(v) {
                inf_nbrs[u as usize] -= 1;
            }
        }
        if to == VertexState::I {
            infected += 1;
            for &u in g.neighbors(v) {
                inf_nbrs[u as usize] += 1;
            }
        }
        events.push(Event {
            time: mark.time,
            vertex: v,
            from,
            to,
        });
    }

    Ok(Trajectory {
        initial: init.clone(),
        events,
        horizon: stream.horizon,
        censored: infected > 0,
    })
}
