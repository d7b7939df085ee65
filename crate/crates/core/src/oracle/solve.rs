//! Mean absorption time by linear solve on the transient block.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::state::Configuration;

use super::GeneratorMatrix;

const RESIDUAL_TARGET: f64 = 1e-10;
/// Dense factorization up to this many transient states; Gauss-Seidel above.
const DIRECT_SOLVE_MAX: usize = 2187;
const MAX_SWEEPS: usize = 2_000_000;

/// Expected time to reach an infection-free state from `init`: solves
/// `(-Q_TT) m = 1` over the transient (infected) states and returns
/// `m[init]`. The residual is checked against 1e-10.
pub fn mean_extinction(gen: &GeneratorMatrix, init: &Configuration) -> Result<f64> {
    let start = gen.index_of(init)?;
    if gen.is_absorbing(start) {
        return Ok(0.0);
    }
    let transient: Vec<usize> = (0..gen.n_states())
        .filter(|&s| !gen.is_absorbing(s))
        .collect();
    let mut local = vec![usize::MAX; gen.n_states()];
    for (i, &s) in transient.iter().enumerate() {
        local[s] = i;
    }
    let nt = transient.len();

    let m = if nt <= DIRECT_SOLVE_MAX {
        solve_direct(gen, &transient, &local)?
    } else {
        solve_gauss_seidel(gen, &transient, &local)?
    };

    let residual = max_residual(gen, &transient, &local, &m);
    if residual > RESIDUAL_TARGET {
        return Err(Error::SolveResidual {
            target: RESIDUAL_TARGET,
            achieved: residual,
        });
    }
    Ok(m[local[start]])
}

/// inf-norm of `(-Q_TT) m - 1`.
fn max_residual(
    gen: &GeneratorMatrix,
    transient: &[usize],
    local: &[usize],
    m: &[f64],
) -> f64 {
    let mut worst = 0.0f64;
    for (i, &s) in transient.iter().enumerate() {
        let mut ax = -gen.diag(s) * m[i];
        for &(t, q) in gen.row(s) {
            let j = local[t as usize];
            if j != usize::MAX {
                ax -= q * m[j];
            }
        }
        worst = worst.max((ax - 1.0).abs());
    }
    worst
}

fn solve_direct(
    gen: &GeneratorMatrix,
    transient: &[usize],
    local: &[usize],
) -> Result<Vec<f64>> {
    let nt = transient.len();
    let mut a = DMatrix::<f64>::zeros(nt, nt);
    for (i, &s) in transient.iter().enumerate() {
        a[(i, i)] = -gen.diag(s);
        for &(t, q) in gen.row(s) {
            let j = local[t as usize];
            if j != usize::MAX {
                a[(i, j)] -= q;
            }
        }
    }
    let b = DVector::from_element(nt, 1.0);
    let solution = a.lu().solve(&b).ok_or(Error::SolveResidual {
        target: RESIDUAL_TARGET,
        achieved: f64::INFINITY,
    })?;
    Ok(solution.iter().copied().collect())
}

/// Gauss-Seidel sweeps; the restricted matrix is a nonsingular M-matrix
/// (absorption is almost sure), for which this splitting converges.
fn solve_gauss_seidel(
    gen: &GeneratorMatrix,
    transient: &[usize],
    local: &[usize],
) -> Result<Vec<f64>> {
    let nt = transient.len();
    let mut m = vec![1.0f64; nt];
    for _ in 0..MAX_SWEEPS {
        for (i, &s) in transient.iter().enumerate() {
            let mut acc = 1.0;
            for &(t, q) in gen.row(s) {
                let j = local[t as usize];
                if j != usize::MAX {
                    acc += q * m[j];
                }
            }
            m[i] = acc / (-gen.diag(s));
        }
        if max_residual(gen, transient, local, &m) <= RESIDUAL_TARGET * 0.5 {
            return Ok(m);
        }
    }
    Err(Error::SolveResidual {
        target: RESIDUAL_TARGET,
        achieved: max_residual(gen, transient, local, &m),
    })
}
