//! Evaluation-based analysis: splitting disorders into high, medium and low
//! priority regions with a pair of thresholds `h ≥ l`.
//!
//! Values come either from a qualitative result (evaluation status values of
//! a strict relation) or from a quantitative one (weights). Thresholds are
//! chosen by percentiles of the descending value list or by offsets from
//! the mean in units of the standard deviation.

mod esv;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::disorder::DisorderId;
use crate::weighting::WeightVector;

pub use esv::{esv, topo_rank, EsvEntry, EsvList};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrisectionError {
    #[error("percentiles must satisfy 0 < beta < alpha < 100 (alpha = {alpha}, beta = {beta})")]
    BadPercentiles { alpha: f64, beta: f64 },
    #[error("offsets must be non-negative (k1 = {k1}, k2 = {k2})")]
    BadOffsets { k1: f64, k2: f64 },
    #[error("threshold h = {h} is below l = {l}")]
    ThresholdOrder { h: f64, l: f64 },
    #[error("nothing to trisect")]
    Empty,
    #[error("preference cycle: {}", .0.iter().map(DisorderId::as_str).collect::<Vec<_>>().join(" > "))]
    CycleDetected(Vec<DisorderId>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Percentile,
    Statistical,
    /// Thresholds supplied directly.
    Manual,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Percentile => "PERCENTILE",
            Method::Statistical => "STATISTICAL",
            Method::Manual => "MANUAL",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "SCREAMING_SNAKE_CASE", deny_unknown_fields)]
pub enum TrisectionParams {
    /// Percentile pair with `0 < beta < alpha < 100`.
    #[serde(alias = "percentile")]
    Percentile { alpha: f64, beta: f64 },
    /// `h = μ + k1·σ`, `l = μ − k2·σ`.
    #[serde(alias = "statistical")]
    Statistical { k1: f64, k2: f64 },
}

impl TrisectionParams {
    pub fn validate(&self) -> Result<(), TrisectionError> {
        match *self {
            TrisectionParams::Percentile { alpha, beta } => {
                if !(0.0 < beta && beta < alpha && alpha < 100.0) {
                    return Err(TrisectionError::BadPercentiles { alpha, beta });
                }
            }
            TrisectionParams::Statistical { k1, k2 } => {
                if !(k1 >= 0.0 && k2 >= 0.0 && k1.is_finite() && k2.is_finite()) {
                    return Err(TrisectionError::BadOffsets { k1, k2 });
                }
            }
        }
        Ok(())
    }
}

/// One-based rank as an index, snapping values within 1e-9 of an integer so
/// that e.g. `80 * 5 / 100` is exactly 4.
fn snapped(x: f64) -> f64 {
    if (x - x.round()).abs() < 1e-9 {
        x.round()
    } else {
        x
    }
}

/// Threshold pair from two percentiles of the descending value list.
///
/// `l = v[⌈αn/100⌉]` and `h = v[max(1, ⌊βn/100⌋)]` (one-based, clamped to
/// `[1, n]`). Taking `h` at the smaller percentile keeps `h ≥ l` on a
/// descending list. The input is sorted descending first.
pub fn percentile_thresholds(values: &[f64], alpha: f64, beta: f64) -> Result<(f64, f64), TrisectionError> {
    TrisectionParams::Percentile { alpha, beta }.validate()?;
    if values.is_empty() {
        return Err(TrisectionError::Empty);
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    let n = v.len();
    let at = |rank: f64| v[(rank as usize).clamp(1, n) - 1];
    let l = at(snapped(alpha * n as f64 / 100.0).ceil());
    let h = at(snapped(beta * n as f64 / 100.0).floor().max(1.0));
    Ok((h, l))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatisticalThresholds {
    pub h: f64,
    pub l: f64,
    pub mu: f64,
    pub sigma: f64,
}

/// Mean and population standard deviation (divisor `n`), then
/// `h = μ + k1·σ` and `l = μ − k2·σ`.
pub fn statistical_thresholds(values: &[f64], k1: f64, k2: f64) -> Result<StatisticalThresholds, TrisectionError> {
    TrisectionParams::Statistical { k1, k2 }.validate()?;
    if values.is_empty() {
        return Err(TrisectionError::Empty);
    }
    let n = values.len() as f64;
    let mu = values.iter().sum::<f64>() / n;
    let sigma = (values.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / n).sqrt();
    Ok(StatisticalThresholds {
        h: mu + k1 * sigma,
        l: mu - k2 * sigma,
        mu,
        sigma,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trisection {
    pub method: Method,
    pub h: f64,
    pub l: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    pub high: Vec<String>,
    pub medium: Vec<String>,
    pub low: Vec<String>,
}

/// `H = {v ≥ h}`, `L = {v ≤ l} \ H`, `M` the rest.
///
/// When `h = l`, a value equal to both lands in `H`. Region lists are sorted
/// by descending value, then input order.
pub fn trisect(values: &WeightVector, h: f64, l: f64) -> Result<Trisection, TrisectionError> {
    if h < l || h.is_nan() || l.is_nan() {
        return Err(TrisectionError::ThresholdOrder { h, l });
    }
    let mut sorted: Vec<(&str, f64)> = values.iter().collect();
    sorted.sort_by(|a, b| b.1.total_cmp(&a.1));
    let (mut high, mut medium, mut low) = (Vec::new(), Vec::new(), Vec::new());
    for (id, v) in sorted {
        let region = if v >= h {
            &mut high
        } else if v <= l {
            &mut low
        } else {
            &mut medium
        };
        region.push(id.to_owned());
    }
    Ok(Trisection {
        method: Method::Manual,
        h,
        l,
        mu: None,
        sigma: None,
        high,
        medium,
        low,
    })
}

/// Chooses thresholds by `params` and trisects `values`.
pub fn trisect_with(values: &WeightVector, params: &TrisectionParams) -> Result<Trisection, TrisectionError> {
    params.validate()?;
    let v: Vec<f64> = values.values().collect();
    match *params {
        TrisectionParams::Percentile { alpha, beta } => {
            let (h, l) = percentile_thresholds(&v, alpha, beta)?;
            Ok(Trisection {
                method: Method::Percentile,
                ..trisect(values, h, l)?
            })
        }
        TrisectionParams::Statistical { k1, k2 } => {
            let t = statistical_thresholds(&v, k1, k2)?;
            Ok(Trisection {
                method: Method::Statistical,
                mu: Some(t.mu),
                sigma: Some(t.sigma),
                ..trisect(values, t.h, t.l)?
            })
        }
    }
}
