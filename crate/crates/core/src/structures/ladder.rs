//! The exponent ladder tying survival-time scales to the model parameters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How delta enters the base exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LadderKind {
    /// eps = (delta/2) / (400 tau^3): the survival-time ladder, which spends
    /// half of delta on the star count.
    HalvedDelta,
    /// eps = delta / (400 tau^3): the disjoint-star construction ladder.
    DirectDelta,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct EpsilonLadder {
    pub delta: f64,
    pub tau: f64,
    pub lambda: f64,
    pub rho: f64,
    pub kind: LadderKind,
    pub eps: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
    pub eps4: f64,
}

/// Derives the full exponent ladder:
/// eps1 = eps, eps2 = min(rho, lambda, 1)/200 * eps1, eps3 = eps2/4, and
/// eps4 = 24 min(rho, lambda, 1)/3200 * eps2.
pub fn exponent_ladder(
    delta: f64,
    tau: f64,
    lambda: f64,
    rho: f64,
    kind: LadderKind,
) -> Result<EpsilonLadder> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::ParamOutOfRange {
            name: "delta",
            value: delta,
            requirement: "in (0, 1)",
        });
    }
    if !(tau > 2.0) {
        return Err(Error::TauOutOfRange { tau });
    }
    if !(lambda > 0.0) {
        return Err(Error::ParamOutOfRange {
            name: "lambda",
            value: lambda,
            requirement: "> 0",
        });
    }
    if !(rho > 0.0) {
        return Err(Error::ParamOutOfRange {
            name: "rho",
            value: rho,
            requirement: "> 0",
        });
    }
    let effective_delta = match kind {
        LadderKind::HalvedDelta => delta / 2.0,
        LadderKind::DirectDelta => delta,
    };
    let eps = effective_delta / (400.0 * tau.powi(3));
    let min_rate = rho.min(lambda).min(1.0);
    let eps1 = eps;
    let eps2 = min_rate / 200.0 * eps1;
    let eps3 = eps2 / 4.0;
    let eps4 = 24.0 * min_rate / 3200.0 * eps2;
    Ok(EpsilonLadder {
        delta,
        tau,
        lambda,
        rho,
        kind,
        eps,
        eps1,
        eps2,
        eps3,
        eps4,
    })
}

impl EpsilonLadder {
    /// The delta actually fed into the exponent (halved for the survival
    /// ladder).
    pub fn effective_delta(&self) -> f64 {
        match self.kind {
            LadderKind::HalvedDelta => self.delta / 2.0,
            LadderKind::DirectDelta => self.delta,
        }
    }

    /// Epoch spacing of the lit-count observable at size n: 3 n^{eps2}.
    pub fn epoch_spacing(&self, n: usize) -> f64 {
        3.0 * (n as f64).powf(self.eps2)
    }

    /// Degree windows of the layered construction at graph size n: centers
    /// of degree above n^{2 eps_tilde} and layer vertices inside
    /// (n^{eps_bar}, n^{3 eps_bar}), with eps_tilde = delta'/(20 tau) and
    /// eps_bar = eps_tilde/(4.4 tau). At desk-scale n these thresholds
    /// collapse toward 1, so explicit overrides are the practical route.
    pub fn extraction_windows(&self, n: usize) -> super::ExtractionWindows {
        let eps_tilde = self.effective_delta() / (20.0 * self.tau);
        let eps_bar = eps_tilde / (4.4 * self.tau);
        let nf = n as f64;
        super::ExtractionWindows {
            center: Some(super::DegreeWindow {
                min: nf.powf(2.0 * eps_tilde),
                max: f64::INFINITY,
            }),
            layer: Some(super::DegreeWindow {
                min: nf.powf(eps_bar),
                max: nf.powf(3.0 * eps_bar),
            }),
        }
    }
}
