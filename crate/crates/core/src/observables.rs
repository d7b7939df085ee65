//! Observables derived from trajectories: count series, epoch-indexed lit
//! counts on a hierarchical-star, and survival summaries with bootstrap
//! confidence intervals.

use std::io::Write;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{ExtinctionTime, Trajectory};
use crate::error::{Error, Result};
use crate::rng::{derive_rng, Domain};
use crate::structures::{lit_unchecked, HierarchicalStar};

/// Evenly spaced query times `t_r = 3 r n^{eps2}`, r = 0..=R.
#[derive(Clone, Debug)]
pub struct EpochSchedule {
    times: Vec<f64>,
    pub n: usize,
    pub eps2: f64,
}

impl EpochSchedule {
    pub fn new(n: usize, eps2: f64, epochs: usize) -> Self {
        let spacing = 3.0 * (n as f64).powf(eps2);
        EpochSchedule {
            times: (0..=epochs).map(|r| r as f64 * spacing).collect(),
            n,
            eps2,
        }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn spacing(&self) -> f64 {
        3.0 * (self.n as f64).powf(self.eps2)
    }
}

/// Piecewise-constant (#S, #I, #R) over time; the first row is the initial
/// configuration at t = 0, later rows land on event times.
pub fn count_series(t: &Trajectory) -> Vec<(f64, usize, usize, usize)> {
    let (mut s, mut i, mut r) = t.initial.counts();
    let mut series = Vec::with_capacity(t.events.len() + 1);
    series.push((0.0, s, i, r));
    for e in &t.events {
        match e.from {
            crate::state::VertexState::S => s -= 1,
            crate::state::VertexState::I => i -= 1,
            crate::state::VertexState::R => r -= 1,
        }
        match e.to {
            crate::state::VertexState::S => s += 1,
            crate::state::VertexState::I => i += 1,
            crate::state::VertexState::R => r += 1,
        }
        series.push((e.time, s, i, r));
    }
    series
}

/// W_r: how many first-layer vertices of `hs` are m-lit among their own
/// second-layer rows at each schedule time. Uses the cadlag convention (an
/// event at exactly t_r counts). Querying past the horizon of a censored run
/// is an error; for extinct runs later epochs are all zero because no vertex
/// is infected anymore.
pub fn lit_count_series(
    t: &Trajectory,
    hs: &HierarchicalStar,
    m: f64,
    sched: &EpochSchedule,
) -> Result<Vec<u32>> {
    for v in hs.vertices() {
        if v as usize >= t.n() {
            return Err(Error::ShapeMismatch(format!(
                "star vertex {v} outside trajectory with {} vertices",
                t.n()
            )));
        }
    }
    if t.censored {
        if let Some(&bad) = sched.times().iter().find(|&&tr| tr > t.horizon) {
            return Err(Error::EpochBeyondHorizon {
                time: bad,
                horizon: t.horizon,
            });
        }
    }
    let mut config = t.initial.clone();
    let mut next_event = 0usize;
    let mut series = Vec::with_capacity(sched.times().len());
    for &tr in sched.times() {
        while next_event < t.events.len() && t.events[next_event].time <= tr {
            let e = &t.events[next_event];
            config.set(e.vertex, e.to);
            next_event += 1;
        }
        let w = hs
            .first_layer
            .iter()
            .zip(&hs.second_layer)
            .filter(|(&u, row)| lit_unchecked(&config, u, row, m))
            .count();
        series.push(w as u32);
    }
    Ok(series)
}

/// Median of extended-real survival values: censored samples behave as
/// "at least the horizon".
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MedianValue {
    Time(f64),
    AtLeast(f64),
}

impl MedianValue {
    fn sort_key(&self) -> (bool, f64) {
        match *self {
            MedianValue::Time(t) => (false, t),
            MedianValue::AtLeast(h) => (true, h),
        }
    }

    pub fn as_finite(&self) -> Option<f64> {
        match *self {
            MedianValue::Time(t) => Some(t),
            MedianValue::AtLeast(_) => None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurvivalReport {
    pub n_samples: usize,
    pub censor_fraction: f64,
    /// Valid as a plain median while censor_fraction < 1/2; otherwise the
    /// marker form reports a lower bound.
    pub median: MedianValue,
    /// Mean over uncensored samples only; absent when everything censored.
    pub mean_uncensored: Option<f64>,
    /// Percentile bootstrap 95% interval for the median.
    pub median_ci: (MedianValue, MedianValue),
    pub bootstrap_reps: usize,
    pub seed: u64,
    /// Echo of the generating configuration, filled by the experiment layer.
    pub params: serde_json::Value,
}

/// Extended-real order: finite values first by time, censored values after
/// every finite one, ordered by horizon among themselves.
fn extended_order(a: &(bool, f64), b: &(bool, f64)) -> std::cmp::Ordering {
    match (a.0, b.0) {
        (false, false) | (true, true) => a.1.total_cmp(&b.1),
        (false, true) => std::cmp::Ordering::Less,
        (true, false) => std::cmp::Ordering::Greater,
    }
}

fn median_of(sorted: &[(bool, f64)]) -> MedianValue {
    let n = sorted.len();
    let value = |&(censored, v): &(bool, f64)| {
        if censored {
            MedianValue::AtLeast(v)
        } else {
            MedianValue::Time(v)
        }
    };
    if n % 2 == 1 {
        value(&sorted[n / 2])
    } else {
        let lo = &sorted[n / 2 - 1];
        let hi = &sorted[n / 2];
        match (lo.0, hi.0) {
            (false, false) => MedianValue::Time(0.5 * (lo.1 + hi.1)),
            (false, true) => MedianValue::AtLeast(0.5 * (lo.1 + hi.1)),
            _ => MedianValue::AtLeast(lo.1.min(hi.1)),
        }
    }
}

/// Median, censoring fraction, uncensored mean, and a percentile-bootstrap
/// 95% CI of the median. Deterministic given the seed; invariant under
/// sample permutation.
pub fn summarize_survival(
    samples: &[ExtinctionTime],
    bootstrap_reps: usize,
    seed: u64,
) -> Result<SurvivalReport> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let n = samples.len();
    let mut keys: Vec<(bool, f64)> = samples
        .iter()
        .map(|s| (s.is_censored(), s.value()))
        .collect();
    keys.sort_by(extended_order);
    let censored = keys.iter().filter(|k| k.0).count();
    let uncensored: Vec<f64> = keys.iter().filter(|k| !k.0).map(|k| k.1).collect();
    let mean_uncensored = if uncensored.is_empty() {
        None
    } else {
        Some(uncensored.iter().sum::<f64>() / uncensored.len() as f64)
    };
    let median = median_of(&keys);

    let mut rng = derive_rng(&[Domain::Bootstrap as u64, seed]);
    let mut boot_medians: Vec<(bool, f64)> = Vec::with_capacity(bootstrap_reps);
    let mut resample = vec![(false, 0.0f64); n];
    for _ in 0..bootstrap_reps {
        for slot in resample.iter_mut() {
            *slot = keys[rng.random_range(0..n)];
        }
        resample.sort_by(extended_order);
        boot_medians.push(median_of(&resample).sort_key());
    }
    let median_ci = if boot_medians.is_empty() {
        (median, median)
    } else {
        boot_medians.sort_by(extended_order);
        let pick = |q: f64| {
            let idx = ((boot_medians.len() - 1) as f64 * q).round() as usize;
            let (c, v) = boot_medians[idx];
            if c {
                MedianValue::AtLeast(v)
            } else {
                MedianValue::Time(v)
            }
        };
        (pick(0.025), pick(0.975))
    };

    Ok(SurvivalReport {
        n_samples: n,
        censor_fraction: censored as f64 / n as f64,
        median,
        mean_uncensored,
        median_ci,
        bootstrap_reps,
        seed,
        params: serde_json::Value::Null,
    })
}

/// `epoch,W` rows.
pub fn write_lit_series_csv(out: &mut impl Write, series: &[u32]) -> Result<()> {
    writeln!(out, "epoch,W")?;
    for (r, w) in series.iter().enumerate() {
        writeln!(out, "{r},{w}")?;
    }
    Ok(())
}

/// `replicate,extinction_time,censored` rows; censored rows carry the
/// horizon in the time column.
pub fn write_survival_csv(out: &mut impl Write, samples: &[ExtinctionTime]) -> Result<()> {
    writeln!(out, "replicate,extinction_time,censored")?;
    for (i, s) in samples.iter().enumerate() {
        writeln!(out, "{i},{},{}", s.value(), s.is_censored())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{Event, ExtinctionTime};
    use crate::state::{Configuration, VertexState};

    fn event(time: f64, vertex: u32, from: VertexState, to: VertexState) -> Event {
        Event {
            time,
            vertex,
            from,
            to,
        }
    }

    #[test]
    fn schedule_starts_at_zero_with_uniform_spacing() {
        let sched = EpochSchedule::new(100, 0.5, 4);
        let times = sched.times();
        assert_eq!(times.len(), 5);
        assert_eq!(times[0], 0.0);
        for w in times.windows(2) {
            assert!((w[1] - w[0] - 30.0).abs() < 1e-12); // 3 * 100^0.5
        }
    }

    #[test]
    fn count_series_conserves_and_tracks_events() {
        let initial = Configuration::single_infected(3, 1).unwrap();
        let t = Trajectory {
            initial,
            events: vec![
                event(0.5, 1, VertexState::I, VertexState::R),
                event(1.5, 1, VertexState::R, VertexState::S),
            ],
            horizon: 10.0,
            censored: false,
        };
        let series = count_series(&t);
        assert_eq!(series[0], (0.0, 2, 1, 0));
        assert_eq!(series[1], (0.5, 2, 0, 1));
        assert_eq!(series[2], (1.5, 3, 0, 0));
        for &(_, s, i, r) in &series {
            assert_eq!(s + i + r, 3);
        }
    }

    #[test]
    fn all_susceptible_start_is_constant() {
        let t = Trajectory {
            initial: Configuration::all_susceptible(4),
            events: vec![],
            horizon: 5.0,
            censored: false,
        };
        assert_eq!(count_series(&t), vec![(0.0, 4, 0, 0)]);
    }

    fn small_star() -> (crate::graph::SimpleGraph, HierarchicalStar) {
        let layout = crate::structures::PlantLayout {
            count: 1,
            k1: 2,
            k2: 2,
        };
        let (g, stars) = layout.build(&[]).unwrap();
        (g, stars.into_iter().next().unwrap())
    }

    #[test]
    fn everything_infected_lights_the_full_first_layer() {
        let (g, hs) = small_star();
        let t = Trajectory {
            initial: Configuration::all_infected(g.n()),
            events: vec![],
            horizon: 100.0,
            censored: true,
        };
        let sched = EpochSchedule::new(g.n(), 0.0, 0); // single epoch at t = 0
        let w = lit_count_series(&t, &hs, 5.0, &sched).unwrap();
        assert_eq!(w, vec![2]);
    }

    #[test]
    fn nothing_infected_gives_zero_series() {
        let (g, hs) = small_star();
        let t = Trajectory {
            initial: Configuration::all_susceptible(g.n()),
            events: vec![],
            horizon: 1e6,
            censored: false,
        };
        let sched = EpochSchedule::new(g.n(), 0.3, 8);
        let w = lit_count_series(&t, &hs, 1.0, &sched).unwrap();
        assert!(w.iter().all(|&x| x == 0));
    }

    #[test]
    fn single_persistent_first_layer_vertex_keeps_w_at_one() {
        // u = first_layer[0] stays infected; everything else only flickers
        let (g, hs) = small_star();
        let u = hs.first_layer[0];
        let other = hs.first_layer[1];
        let mut initial = Configuration::all_susceptible(g.n());
        initial.set(u, VertexState::I);
        initial.set(other, VertexState::I);
        let t = Trajectory {
            initial,
            events: vec![
                event(1.0, other, VertexState::I, VertexState::R),
                event(2.0, other, VertexState::R, VertexState::S),
            ],
            horizon: 50.0,
            censored: true,
        };
        let sched = EpochSchedule::new(4, 1.0, 4); // spacing 12, within horizon
        let w = lit_count_series(&t, &hs, 2.0, &sched).unwrap();
        assert_eq!(w[0], 2); // both infected at t = 0
        assert!(w[1..].iter().all(|&x| x == 1), "{w:?}");
    }

    #[test]
    fn censored_run_rejects_epochs_beyond_horizon() {
        let (g, hs) = small_star();
        let t = Trajectory {
            initial: Configuration::all_infected(g.n()),
            events: vec![],
            horizon: 5.0,
            censored: true,
        };
        let sched = EpochSchedule::new(4, 1.0, 3); // goes to 36 > 5
        let err = lit_count_series(&t, &hs, 1.0, &sched).unwrap_err();
        assert!(matches!(err, Error::EpochBeyondHorizon { .. }));
    }

    #[test]
    fn extinct_run_allows_epochs_beyond_horizon() {
        let (g, hs) = small_star();
        let mut initial = Configuration::all_susceptible(g.n());
        initial.set(hs.center, VertexState::I);
        let t = Trajectory {
            initial,
            events: vec![event(0.5, hs.center, VertexState::I, VertexState::R)],
            horizon: 5.0,
            censored: false,
        };
        let sched = EpochSchedule::new(4, 1.0, 3);
        let w = lit_count_series(&t, &hs, 1.0, &sched).unwrap();
        assert_eq!(w, vec![0, 0, 0, 0]); // nothing infected after extinction
    }

    #[test]
    fn constant_samples_give_degenerate_summary() {
        let samples = vec![ExtinctionTime::Extinct(1.0); 40];
        let r = summarize_survival(&samples, 200, 7).unwrap();
        assert_eq!(r.median, MedianValue::Time(1.0));
        assert_eq!(r.median_ci, (MedianValue::Time(1.0), MedianValue::Time(1.0)));
        assert_eq!(r.censor_fraction, 0.0);
        assert_eq!(r.mean_uncensored, Some(1.0));
    }

    #[test]
    fn three_samples_median_is_middle() {
        let samples = vec![
            ExtinctionTime::Extinct(3.0),
            ExtinctionTime::Extinct(1.0),
            ExtinctionTime::Extinct(2.0),
        ];
        let r = summarize_survival(&samples, 100, 1).unwrap();
        assert_eq!(r.median, MedianValue::Time(2.0));
    }

    #[test]
    fn median_is_permutation_invariant() {
        let mut samples: Vec<ExtinctionTime> = (0..31)
            .map(|i| ExtinctionTime::Extinct(((i * 7919) % 101) as f64))
            .collect();
        let a = summarize_survival(&samples, 300, 5).unwrap();
        samples.reverse();
        samples.swap(3, 17);
        let b = summarize_survival(&samples, 300, 5).unwrap();
        assert_eq!(a.median, b.median);
        assert_eq!(a.median_ci, b.median_ci);
    }

    #[test]
    fn all_censored_reports_at_least_horizon() {
        let samples = vec![ExtinctionTime::Censored(50.0); 10];
        let r = summarize_survival(&samples, 100, 3).unwrap();
        assert_eq!(r.censor_fraction, 1.0);
        assert_eq!(r.median, MedianValue::AtLeast(50.0));
        assert_eq!(r.mean_uncensored, None);
    }

    #[test]
    fn censored_majority_pushes_median_to_marker() {
        let mut samples = vec![ExtinctionTime::Censored(100.0); 6];
        samples.extend([ExtinctionTime::Extinct(1.0); 5]);
        let r = summarize_survival(&samples, 100, 3).unwrap();
        assert!(matches!(r.median, MedianValue::AtLeast(_)));
    }

    #[test]
    fn exponential_median_matches_ln_two() {
        use rand_distr::{Distribution, Exp1};
        let mut rng = derive_rng(&[99]);
        let n = 100_000;
        let samples: Vec<ExtinctionTime> = (0..n)
            .map(|_| ExtinctionTime::Extinct(Exp1.sample(&mut rng)))
            .collect();
        let r = summarize_survival(&samples, 200, 11).unwrap();
        let median = r.median.as_finite().unwrap();
        // SE of the sample median of Exp(1): 1/(2 f(m) sqrt(n)) = 1/sqrt(n)
        let se = 1.0 / (n as f64).sqrt();
        let ln2 = std::f64::consts::LN_2;
        assert!(
            (median - ln2).abs() < 3.0 * se,
            "median {median} vs {ln2}"
        );
        // CI should bracket the true median
        let (lo, hi) = (
            r.median_ci.0.as_finite().unwrap(),
            r.median_ci.1.as_finite().unwrap(),
        );
        assert!(lo <= median && median <= hi);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(
            summarize_survival(&[], 10, 0),
            Err(Error::EmptySamples)
        ));
    }

    #[test]
    fn csv_formats_are_stable() {
        let mut buf = Vec::new();
        write_lit_series_csv(&mut buf, &[2, 1, 0]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "epoch,W\n0,2\n1,1\n2,0\n");

        let mut buf = Vec::new();
        write_survival_csv(
            &mut buf,
            &[ExtinctionTime::Extinct(1.5), ExtinctionTime::Censored(10.0)],
        )
        .unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "replicate,extinction_time,censored\n0,1.5,false\n1,10,true\n"
        );
    }
}
