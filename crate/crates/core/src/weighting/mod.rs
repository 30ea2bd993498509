//! Quantitative analysis: numeric disorder weights from pairwise comparison
//! matrices.
//!
//! A comparison matrix `M` holds the judged importance ratio `m[i][j]` of
//! item `i` over item `j`. When the judgments are perfectly consistent,
//! `m[i][j] = w[i] / w[j]` and `Mw = nw`; in practice the weights are the
//! principal eigenvector and the gap `λmax − n` measures the inconsistency.
//!
//! To keep every matrix at order nine or less, disorders are grouped into
//! clusters and weighted top-down through a [`Hierarchy`]. An
//! [`ImportanceScale`] offers the alternative of rating each disorder against
//! a handful of weighted intensity levels.

mod consistency;
mod eigen;
mod hierarchy;
mod matrix;
mod scale;
mod weights;

use thiserror::Error;

pub use consistency::{consistency, random_index, ConsistencyReport, ACCEPTABLE_RATIO, RANDOM_INDEX};
pub use eigen::{principal_eigen, EigenResult, POWER_MAX_ITERATIONS, POWER_TOLERANCE, RESIDUAL_TOLERANCE};
pub use hierarchy::{weigh_hierarchy, Cluster, Hierarchy, HierarchyWeights, CLUSTER_MATRIX_NAME};
pub use matrix::{
    is_saaty_value, parse_entry, round_sig12, ComparisonMatrix, Entry, MatrixIssue, ValidationReport, MAX_ORDER,
    RECIPROCITY_TOLERANCE,
};
pub use scale::{assign_scale_weights, build_importance_scale, ImportanceScale, ScaleWeights};
pub use weights::WeightVector;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightingError {
    #[error("malformed matrix: {0}")]
    Shape(String),
    #[error("cannot parse matrix entry `{0}`")]
    BadEntry(String),
    #[error("invalid comparison matrix{}: {}", .matrix.as_deref().map(|m| format!(" `{m}`")).unwrap_or_default(), .report.errors.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidMatrix {
        matrix: Option<String>,
        report: ValidationReport,
    },
    #[error("matrix `{matrix}` is inconsistent: C.R. = {:.3}% (must be below 10%)", consistency_ratio * 100.0)]
    InconsistentMatrix { matrix: String, consistency_ratio: f64 },
    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },
    #[error("invalid hierarchy: {0}")]
    Partition(String),
    #[error("disorder `{0}` has no assigned level")]
    UnassignedDisorder(String),
    #[error("unknown scale level `{0}`")]
    UnknownLevel(String),
    #[error("unknown disorder `{0}`")]
    UnknownDisorder(String),
}
