//! Order-statistics regularity diagnostic for sampled degree sequences.
//!
//! The event holds when every order statistic `d(i)` for
//! `i in [ceil(n^eps), n]` sits inside the envelope
//! `c1 (n/i)^{1/(tau-1)} <= d(i) <= c2 (n/i)^{1/(tau-1)}` and the total degree
//! is within a factor 1/2 of its mean `n mu`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{DegreeSequence, PowerLawSampler};

/// Envelope constants. The inner factors 5 and 8 are sufficient rather than
/// tight; they are the defaults and can be overridden.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct EnvelopeConstants {
    pub lower_factor: f64,
    pub upper_factor: f64,
}

impl Default for EnvelopeConstants {
    fn default() -> Self {
        EnvelopeConstants {
            lower_factor: 5.0,
            upper_factor: 8.0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeEventReport {
    pub epsilon: f64,
    pub order_stats_ok: bool,
    pub sum_ok: bool,
    /// Order-statistic ranks i (1-based, descending degrees) violating the
    /// envelope.
    pub violating_indices: Vec<usize>,
    /// Mean of the degree law.
    pub mu: f64,
    pub c1: f64,
    pub c2: f64,
}

impl DegreeEventReport {
    pub fn holds(&self) -> bool {
        self.order_stats_ok && self.sum_ok
    }
}

/// Evaluates the regularity event for `deg` with the default envelope
/// constants. Requires `0 < epsilon < 1/(2 tau - 1)`.
pub fn check_degree_event(deg: &DegreeSequence, epsilon: f64) -> Result<DegreeEventReport> {
    check_degree_event_with(deg, epsilon, EnvelopeConstants::default())
}

pub fn check_degree_event_with(
    deg: &DegreeSequence,
    epsilon: f64,
    constants: EnvelopeConstants,
) -> Result<DegreeEventReport> {
    let tau = deg.tau;
    let max_eps = 1.0 / (2.0 * tau - 1.0);
    if !(epsilon > 0.0 && epsilon < max_eps) {
        return Err(Error::EpsilonOutOfRange {
            epsilon,
            max: max_eps,
            tau,
        });
    }
    let sampler = PowerLawSampler::new(tau)?;
    let mu = sampler.mean();
    let base = (sampler.normalizer() / (tau - 1.0)).powf(1.0 / (tau - 1.0));
    let c1 = base * constants.lower_factor.powf(-1.0 / (tau - 1.0));
    let c2 = base * constants.upper_factor.powf(1.0 / (tau - 1.0));

    let n = deg.n();
    let mut ordered: Vec<u32> = deg.degrees.clone();
    ordered.sort_unstable_by(|a, b| b.cmp(a));

    let start = (n as f64).powf(epsilon).ceil() as usize;
    let exponent = 1.0 / (tau - 1.0);
    let mut violating = Vec::new();
    for i in start..=n {
        let d = ordered[i - 1] as f64;
        let envelope = (n as f64 / i as f64).powf(exponent);
        if d < c1 * envelope || d > c2 * envelope {
            violating.push(i);
        }
    }
    let total: f64 = deg.sum() as f64;
    let sum_ok = (total - n as f64 * mu).abs() <= 0.5 * n as f64 * mu;

    Ok(DegreeEventReport {
        epsilon,
        order_stats_ok: violating.is_empty(),
        sum_ok,
        violating_indices: violating,
        mu,
        c1,
        c2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant_sequence(n: usize, d: u32, tau: f64) -> DegreeSequence {
        DegreeSequence {
            degrees: vec![d; n],
            tau,
            seed: 0,
        }
    }

    #[test]
    fn rejects_epsilon_out_of_range() {
        let deg = constant_sequence(10, 4, 3.0);
        assert!(check_degree_event(&deg, 0.0).is_err());
        assert!(check_degree_event(&deg, 0.2).is_err()); // 1/(2*3-1) = 0.2
        assert!(check_degree_event(&deg, 0.19).is_ok());
    }

    #[test]
    fn mu_matches_series_value_for_tau_3() {
        let deg = constant_sequence(10, 4, 3.0);
        let report = check_degree_event(&deg, 0.1).unwrap();
        assert!(
            (report.mu - 5.1252).abs() < 5e-4,
            "mu = {} should be 5.125 to 4 significant digits",
            report.mu
        );
    }

    #[test]
    fn constant_threes_violate_the_lower_envelope_at_small_ranks() {
        // d(i) = 3 for all i with n = 100, tau = 3: the lower envelope
        // c1 sqrt(100/i) exceeds 3 for every small rank. The checked range
        // starts at ceil(100^eps) = 2, where c1 * sqrt(50) ≈ 8.1 > 3.
        let deg = constant_sequence(100, 3, 3.0);
        let report = check_degree_event(&deg, 0.05).unwrap();
        assert!(!report.order_stats_ok);
        assert_eq!(report.violating_indices[0], 2);
        let c1 = report.c1;
        assert!(c1 * (100.0f64 / 1.0).sqrt() > 3.0, "envelope at rank 1");
        assert!(c1 * (100.0f64 / 2.0).sqrt() > 3.0, "envelope at rank 2");
        // ranks are contiguous from the start of the range here
        for w in report.violating_indices.windows(2) {
            assert_eq!(w[1], w[0] + 1);
        }
    }

    #[test]
    fn envelope_constants_match_closed_form() {
        let deg = constant_sequence(10, 4, 3.0);
        let report = check_degree_event(&deg, 0.1).unwrap();
        // (C_tau/(tau-1))^{1/(tau-1)} with tau = 3: sqrt(C_3 / 2)
        let base = (12.977_407_7_f64 / 2.0).sqrt();
        assert!((report.c1 - base / 5.0f64.sqrt()).abs() < 1e-4);
        assert!((report.c2 - base * 8.0f64.sqrt()).abs() < 1e-4);
    }

    #[test]
    fn sum_condition_flags_inflated_totals() {
        // all degrees 3: total 3n, mean about 5.13 n, |3n - mu n| < mu n / 2 ok
        let report = check_degree_event(&constant_sequence(100, 3, 3.0), 0.05).unwrap();
        assert!(report.sum_ok);
        // all degrees 9: |9n - 5.13n| = 3.87n > 2.56n
        let report = check_degree_event(&constant_sequence(100, 9, 3.0), 0.05).unwrap();
        assert!(!report.sum_ok);
    }

    #[test]
    fn sampled_sequences_usually_pass_at_moderate_n() {
        let mut holds = 0;
        let trials = 20;
        for seed in 0..trials {
            let deg = crate::graph::sample_degree_sequence(2000, 3.5, seed).unwrap();
            if check_degree_event(&deg, 0.05).unwrap().holds() {
                holds += 1;
            }
        }
        assert!(holds >= trials * 3 / 4, "only {holds}/{trials} held");
    }
}
