//! Continuous-time epidemic dynamics on a simple graph.
//!
//! Two engines realize the same law: [`evolve_harris`] applies a
//! pre-materialized mark stream rule by rule, which makes pathwise unit tests
//! possible; [`simulate_event_driven`] samples the embedded jump chain
//! directly and scales to large graphs. Both are deterministic given a seed
//! and produce [`Trajectory`] values satisfying identical invariants.

mod event_driven;
mod harris;

pub use event_driven::{simulate_event_driven, EventEngine};
pub use harris::{build_harris_stream, build_harris_stream_with_budget, evolve_harris,
    HarrisStream, InfectionMarks, DEFAULT_MARK_BUDGET};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{Configuration, VertexState};

/// Which cycle the vertices follow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// S -> I (rate lambda per infected neighbor), I -> R (rate 1),
    /// R -> S (rate rho).
    #[serde(rename = "SIRS")]
    Sirs,
    /// Reinfection model: I -> S directly at rate 1; vertices never enter R.
    #[serde(rename = "SIS")]
    Sis,
    /// rho = 0: R is absorbing.
    #[serde(rename = "SIR")]
    Sir,
    /// A susceptible vertex with at least one infected neighbor is infected
    /// at flat rate lambda, independent of the neighbor count.
    #[serde(rename = "THRESHOLD_SIRS")]
    ThresholdSirs,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Sirs => "SIRS",
            Variant::Sis => "SIS",
            Variant::Sir => "SIR",
            Variant::ThresholdSirs => "THRESHOLD_SIRS",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "SIRS" => Ok(Variant::Sirs),
            "SIS" => Ok(Variant::Sis),
            "SIR" => Ok(Variant::Sir),
            "THRESHOLD_SIRS" | "THRESHOLD-SIRS" => Ok(Variant::ThresholdSirs),
            _ => Err(Error::InvalidConfig(format!("unknown variant {s:?}"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Infection rate per directed edge (or per vertex for the threshold
/// variant) and immunity-waning rate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub variant: Variant,
    pub lambda: f64,
    pub rho: f64,
}

impl ModelParams {
    pub fn new(variant: Variant, lambda: f64, rho: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::ParamOutOfRange {
                name: "lambda",
                value: lambda,
                requirement: "finite and >= 0",
            });
        }
        if !rho.is_finite() || rho < 0.0 {
            return Err(Error::ParamOutOfRange {
                name: "rho",
                value: rho,
                requirement: "finite and >= 0",
            });
        }
        if variant == Variant::Sir && rho != 0.0 {
            return Err(Error::ParamOutOfRange {
                name: "rho",
                value: rho,
                requirement: "exactly 0 for SIR",
            });
        }
        Ok(ModelParams {
            variant,
            lambda,
            rho,
        })
    }

    pub fn sirs(lambda: f64, rho: f64) -> Result<Self> {
        Self::new(Variant::Sirs, lambda, rho)
    }

    pub fn sis(lambda: f64) -> Result<Self> {
        Self::new(Variant::Sis, lambda, 0.0)
    }

    pub fn sir(lambda: f64) -> Result<Self> {
        Self::new(Variant::Sir, lambda, 0.0)
    }

    pub fn threshold_sirs(lambda: f64, rho: f64) -> Result<Self> {
        Self::new(Variant::ThresholdSirs, lambda, rho)
    }

    /// Waning rate actually used by the dynamics: SIS and SIR have no R -> S
    /// transition.
    pub(crate) fn effective_rho(&self) -> f64 {
        match self.variant {
            Variant::Sis | Variant::Sir => 0.0,
            _ => self.rho,
        }
    }

    /// What an infected vertex becomes on recovery.
    pub(crate) fn recovery_target(&self) -> VertexState {
        match self.variant {
            Variant::Sis => VertexState::S,
            _ => VertexState::R,
        }
    }
}

/// One state change of one vertex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Event {
    pub time: f64,
    pub vertex: u32,
    pub from: VertexState,
    pub to: VertexState,
}

/// First time the infected set empties, or proof that it never did within
/// the horizon.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExtinctionTime {
    Extinct(f64),
    /// Infection was still alive at the stated horizon.
    Censored(f64),
}

impl ExtinctionTime {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtinctionTime::Extinct(t) => Some(t),
            ExtinctionTime::Censored(_) => None,
        }
    }

    pub fn is_censored(self) -> bool {
        matches!(self, ExtinctionTime::Censored(_))
    }

    /// The recorded value: extinction time, or the horizon for censored runs.
    pub fn value(self) -> f64 {
        match self {
            ExtinctionTime::Extinct(t) | ExtinctionTime::Censored(t) => t,
        }
    }
}

/// Piecewise-constant record of per-vertex states over `[0, horizon]`.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub initial: Configuration,
    pub events: Vec<Event>,
    pub horizon: f64,
    pub censored: bool,
}

impl Trajectory {
    pub fn n(&self) -> usize {
        self.initial.n()
    }

    /// Configuration at time `t`, cadlag: an event at exactly `t` counts as
    /// having happened.
    pub fn state_at(&self, t: f64) -> Configuration {
        let mut config = self.initial.clone();
        for e in &self.events {
            if e.time > t {
                break;
            }
            config.set(e.vertex, e.to);
        }
        config
    }

    pub fn final_state(&self) -> Configuration {
        self.state_at(f64::INFINITY)
    }
}

/// First time the infected count reaches zero.
pub fn extinction_time(t: &Trajectory) -> ExtinctionTime {
    let mut infected = t.initial.infected_count();
    if infected == 0 {
        return ExtinctionTime::Extinct(0.0);
    }
    for e in &t.events {
        match (e.from, e.to) {
            (VertexState::I, _) => infected -= 1,
            (_, VertexState::I) => infected += 1,
            _ => (),
        }
        if infected == 0 {
            return ExtinctionTime::Extinct(e.time);
        }
    }
    ExtinctionTime::Censored(t.horizon)
}
