//! Extinction-time CDF by uniformization.
//!
//! `P(T <= t)` is the probability mass the Poissonized discrete chain has
//! moved onto infection-free states by time `t`. Poisson weights come from a
//! mode-centered recurrence, which stays in range for any `Lambda t` without
//! log-gamma gymnastics; the truncation window keeps the neglected mass
//! below 1e-8.

use crate::error::Result;
use crate::state::Configuration;

use super::GeneratorMatrix;

const WEIGHT_CUTOFF: f64 = 1e-18;

/// Poisson(mu) pmf values for k in `left..=right`, covering all but < 1e-9
/// of the mass.
fn poisson_window(mu: f64) -> (usize, Vec<f64>) {
    if mu <= 0.0 {
        return (0, vec![1.0]);
    }
    let mode = mu.floor() as usize;
    // unnormalized weights relative to w[mode] = 1, collected downward first
    let mut below = Vec::new();
    let mut w = 1.0f64;
    let mut k = mode;
    while k > 0 {
        w *= k as f64 / mu; // pmf(k-1)/pmf(k)
        if w < WEIGHT_CUTOFF {
            break;
        }
        below.push(w);
        k -= 1;
    }
    let left = mode - below.len();
    let mut weights: Vec<f64> = below.into_iter().rev().collect();
    weights.push(1.0);
    let mut w = 1.0f64;
    let mut k = mode;
    loop {
        w *= mu / (k + 1) as f64; // pmf(k+1)/pmf(k)
        if w < WEIGHT_CUTOFF {
            break;
        }
        weights.push(w);
        k += 1;
    }
    let total: f64 = weights.iter().sum();
    for x in weights.iter_mut() {
        *x /= total;
    }
    (left, weights)
}

/// `P(extinct by t)` from `init`, to absolute accuracy 1e-8.
pub fn extinction_cdf(gen: &GeneratorMatrix, init: &Configuration, t: f64) -> Result<f64> {
    let start = gen.index_of(init)?;
    if gen.is_absorbing(start) {
        return Ok(1.0);
    }
    if t <= 0.0 {
        return Ok(0.0);
    }
    let rate = gen.max_exit_rate();
    if rate == 0.0 {
        return Ok(0.0);
    }
    let (left, weights) = poisson_window(rate * t);

    let n = gen.n_states();
    let mut v = vec![0.0f64; n];
    v[start] = 1.0;
    let mut next = vec![0.0f64; n];
    let mut cdf = 0.0;
    let absorbed_mass = |v: &[f64]| -> f64 {
        (0..n)
            .filter(|&s| gen.is_absorbing(s))
            .map(|s| v[s])
            .sum()
    };
    let right = left + weights.len() - 1;
    for step in 0..=right {
        if step >= left {
            cdf += weights[step - left] * absorbed_mass(&v);
        }
        if step == right {
            break;
        }
        // one application of P = I + Q / rate
        next.iter_mut().for_each(|x| *x = 0.0);
        for s in 0..n {
            let mass = v[s];
            if mass == 0.0 {
                continue;
            }
            next[s] += mass * (1.0 + gen.diag(s) / rate);
            for &(j, q) in gen.row(s) {
                next[j as usize] += mass * q / rate;
            }
        }
        std::mem::swap(&mut v, &mut next);
    }
    Ok(cdf.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::ModelParams;
    use crate::graph::SimpleGraph;
    use crate::oracle::{build_generator, mean_extinction};

    #[test]
    fn poisson_window_is_a_distribution() {
        for mu in [0.0, 0.3, 1.0, 7.5, 123.0, 4096.0] {
            let (left, w) = poisson_window(mu);
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            if mu > 1.0 {
                assert!(left < mu as usize);
                assert!(left + w.len() > mu as usize);
            }
        }
    }

    #[test]
    fn poisson_window_matches_direct_pmf() {
        let mu = 10.0f64;
        let (left, w) = poisson_window(mu);
        // direct pmf at a few offsets
        let pmf = |k: usize| {
            let mut log_p = -mu;
            for i in 1..=k {
                log_p += (mu / i as f64).ln();
            }
            log_p.exp()
        };
        for (offset, weight) in w.iter().enumerate() {
            let k = left + offset;
            assert!(
                (weight - pmf(k)).abs() < 1e-12,
                "k = {k}: {weight} vs {}",
                pmf(k)
            );
        }
    }

    #[test]
    fn isolated_vertex_cdf_is_exponential() {
        let g = SimpleGraph::from_edges(1, []).unwrap();
        let p = ModelParams::sirs(1.0, 1.0).unwrap();
        let gen = build_generator(&g, &p).unwrap();
        let init = Configuration::all_infected(1);
        let half = extinction_cdf(&gen, &init, std::f64::consts::LN_2).unwrap();
        assert!((half - 0.5).abs() < 1e-8, "CDF(ln 2) = {half}");
        for t in [0.1, 0.5, 2.0, 5.0] {
            let v = extinction_cdf(&gen, &init, t).unwrap();
            assert!((v - (1.0 - (-t).exp())).abs() < 1e-8);
        }
    }

    #[test]
    fn cdf_at_zero_from_infected_state_is_zero() {
        let g = SimpleGraph::from_edges(1, []).unwrap();
        let p = ModelParams::sirs(1.0, 1.0).unwrap();
        let gen = build_generator(&g, &p).unwrap();
        let v = extinction_cdf(&gen, &Configuration::all_infected(1), 0.0).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn cdf_is_nondecreasing_and_saturates() {
        let g = SimpleGraph::path(3);
        let p = ModelParams::sirs(1.0, 1.0).unwrap();
        let gen = build_generator(&g, &p).unwrap();
        let init = Configuration::all_infected(3);
        let grid: Vec<f64> = (0..30).map(|i| i as f64 * 2.0).collect();
        let mut prev = -1.0;
        for &t in &grid {
            let v = extinction_cdf(&gen, &init, t).unwrap();
            assert!(v >= prev - 1e-10, "CDF dipped at t = {t}");
            prev = v;
        }
        assert!((prev - 1.0).abs() < 1e-6, "CDF({}) = {prev}", grid.last().unwrap());
    }

    #[test]
    fn sis_edge_cdf_matches_dense_matrix_exponential() {
        let g = SimpleGraph::from_edges(2, [(0, 1)]).unwrap();
        let p = ModelParams::sis(1.0).unwrap();
        let gen = build_generator(&g, &p).unwrap();
        let init = Configuration::all_infected(2);
        let got = extinction_cdf(&gen, &init, 2.0).unwrap();

        // independent route: exp(Q t) by scaling and squaring on the dense
        // 4-state generator
        let n = gen.n_states();
        let mut q = vec![vec![0.0f64; n]; n];
        for s in 0..n {
            q[s][s] = gen.diag(s);
            for &(j, rate) in gen.row(s) {
                q[s][j as usize] += rate;
            }
        }
        let pt = dense_expm(&q, 2.0);
        let start = gen.index_of(&init).unwrap();
        let reference: f64 = (0..n)
            .filter(|&s| gen.is_absorbing(s))
            .map(|s| pt[start][s])
            .sum();
        assert!(
            (got - reference).abs() < 1e-6,
            "uniformization {got} vs expm {reference}"
        );
    }

    #[test]
    fn mean_is_integral_of_survival() {
        // two-method cross-check: mean_extinction vs adaptive Simpson on
        // 1 - CDF
        let g = SimpleGraph::from_edges(2, [(0, 1)]).unwrap();
        let p = ModelParams::sis(1.0).unwrap();
        let gen = build_generator(&g, &p).unwrap();
        let init = Configuration::all_infected(2);
        let mean = mean_extinction(&gen, &init).unwrap();

        let survival = |t: f64| 1.0 - extinction_cdf(&gen, &init, t).unwrap();
        // find an upper limit where survival is negligible
        let mut upper = 8.0;
        while survival(upper) > 1e-12 {
            upper *= 2.0;
        }
        let integral = adaptive_simpson(&survival, 0.0, upper, 1e-9, 24);
        assert!(
            (integral - mean).abs() / mean < 1e-4,
            "quadrature {integral} vs solve {mean}"
        );
    }

    fn dense_expm(q: &[Vec<f64>], t: f64) -> Vec<Vec<f64>> {
        let n = q.len();
        let norm: f64 = q
            .iter()
            .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max);
        let mut squarings = 0u32;
        let mut scale = t;
        while norm * scale > 0.5 {
            scale /= 2.0;
            squarings += 1;
        }
        // Taylor series at the scaled matrix
        let mut result = identity(n);
        let mut term = identity(n);
        for k in 1..=30 {
            term = mat_mul(&term, q);
            for row in term.iter_mut() {
                for x in row.iter_mut() {
                    *x *= scale / k as f64;
                }
            }
            add_assign(&mut result, &term);
        }
        for _ in 0..squarings {
            result = mat_mul(&result, &result);
        }
        result
    }

    fn identity(n: usize) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        m
    }

    fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let n = a.len();
        let mut c = vec![vec![0.0; n]; n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i][k];
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    c[i][j] += aik * b[k][j];
                }
            }
        }
        c
    }

    fn add_assign(a: &mut [Vec<f64>], b: &[Vec<f64>]) {
        for (ra, rb) in a.iter_mut().zip(b) {
            for (xa, xb) in ra.iter_mut().zip(rb) {
                *xa += xb;
            }
        }
    }

    fn adaptive_simpson(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let simpson = |a: f64, m: f64, b: f64| (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
        let whole = simpson(a, m, b);
        fn recurse(
            f: &dyn Fn(f64) -> f64,
            a: f64,
            b: f64,
            whole: f64,
            tol: f64,
            depth: u32,
        ) -> f64 {
            let m = 0.5 * (a + b);
            let simpson =
                |a: f64, mm: f64, b: f64| (b - a) / 6.0 * (f(a) + 4.0 * f(mm) + f(b));
            let left = simpson(a, 0.5 * (a + m), m);
            let right = simpson(m, 0.5 * (m + b), b);
            if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                recurse(f, a, m, left, tol / 2.0, depth - 1)
                    + recurse(f, m, b, right, tol / 2.0, depth - 1)
            }
        }
        recurse(f, a, b, whole, tol, depth)
    }
}
