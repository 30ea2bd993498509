use serde::{Deserialize, Serialize};

use super::{ComparisonMatrix, EigenResult};

/// Average random consistency index for matrix orders 1 through 10.
pub const RANDOM_INDEX: [f64; 10] = [0.0, 0.0, 0.52, 0.89, 1.11, 1.25, 1.35, 1.40, 1.45, 1.49];

/// Judgments are acceptable when the ratio is strictly below this.
pub const ACCEPTABLE_RATIO: f64 = 0.10;

pub fn random_index(order: usize) -> f64 {
    match order {
        0 => 0.0,
        n => RANDOM_INDEX[(n - 1).min(RANDOM_INDEX.len() - 1)],
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub order: usize,
    pub lambda_max: f64,
    pub consistency_index: f64,
    pub random_index: f64,
    /// As a fraction; `0.00762` is 0.762%.
    pub consistency_ratio: f64,
    pub acceptable: bool,
}

/// `C.R. = (λmax − n) / ((n − 1) · R.I.(n))`.
///
/// Orders 1 and 2 are always perfectly consistent (their random index is
/// zero), so both the index and the ratio are reported as 0.
pub fn consistency(m: &ComparisonMatrix, e: &EigenResult) -> ConsistencyReport {
    let n = m.order();
    let ri = random_index(n);
    let (ci, cr) = if n <= 2 {
        (0.0, 0.0)
    } else {
        let ci = (e.lambda_max - n as f64) / (n as f64 - 1.0);
        (ci, ci / ri)
    };
    ConsistencyReport {
        order: n,
        lambda_max: e.lambda_max,
        consistency_index: ci,
        random_index: ri,
        consistency_ratio: cr,
        acceptable: cr < ACCEPTABLE_RATIO,
    }
}
