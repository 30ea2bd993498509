use serde::{Deserialize, Serialize};

use super::{ComparisonMatrix, WeightVector, WeightingError};

/// Convergence threshold on the max-norm change between successive iterates.
pub const POWER_TOLERANCE: f64 = 1e-10;
pub const POWER_MAX_ITERATIONS: usize = 10_000;
/// Bound on `‖Mw − λmax·w‖∞` accepted after convergence.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    pub weights: WeightVector,
    pub lambda_max: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Principal eigenpair of a positive reciprocal matrix by power iteration.
///
/// Starts from the uniform vector and renormalizes to unit sum each step.
/// For a positive matrix the dominant eigenvalue is simple and real, so the
/// iteration converges; λmax is taken as the mean of `(Mw)_i / w_i`.
pub fn principal_eigen(m: &ComparisonMatrix) -> Result<EigenResult, WeightingError> {
    let report = m.validate();
    if !report.is_valid() {
        return Err(WeightingError::InvalidMatrix { matrix: None, report });
    }
    let a = m.values();
    let n = m.order();
    let mut w = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];

    let mut iterations = 0;
    let mut converged = false;
    while iterations < POWER_MAX_ITERATIONS {
        iterations += 1;
        mul(&a, &w, &mut next);
        let sum: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= sum);
        let delta = w.iter().zip(&next).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        std::mem::swap(&mut w, &mut next);
        if delta < POWER_TOLERANCE {
            converged = true;
            break;
        }
    }

    mul(&a, &w, &mut next);
    let lambda_max = next.iter().zip(&w).map(|(mw, wi)| mw / wi).sum::<f64>() / n as f64;
    let residual = next
        .iter()
        .zip(&w)
        .map(|(mw, wi)| (mw - lambda_max * wi).abs())
        .fold(0.0, f64::max);
    if !converged || residual >= RESIDUAL_TOLERANCE {
        return Err(WeightingError::NotConverged { iterations, residual });
    }

    Ok(EigenResult {
        weights: WeightVector::from_pairs(m.labels().iter().cloned().zip(w)),
        lambda_max,
        iterations,
        converged,
    })
}

fn mul(a: &[Vec<f64>], x: &[f64], out: &mut [f64]) {
    for (row, o) in a.iter().zip(out.iter_mut()) {
        *o = row.iter().zip(x).map(|(m, v)| m * v).sum();
    }
}
