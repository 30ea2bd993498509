use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{
    consistency, principal_eigen, ComparisonMatrix, ConsistencyReport, WeightVector, WeightingError, MAX_ORDER,
};
use crate::disorder::DisorderSet;

/// Intensity levels (e.g. "significantly matched" … "not matched") with
/// eigenvector weights, against which each disorder is rated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImportanceScale {
    pub levels: Vec<String>,
    pub level_matrix: ComparisonMatrix,
    pub level_weights: WeightVector,
    pub consistency: ConsistencyReport,
}

pub fn build_importance_scale(
    levels: &[String],
    level_matrix: &ComparisonMatrix,
) -> Result<ImportanceScale, WeightingError> {
    if !(2..=MAX_ORDER).contains(&levels.len()) {
        return Err(WeightingError::Shape(format!(
            "a scale needs between 2 and {MAX_ORDER} levels, got {}",
            levels.len()
        )));
    }
    if level_matrix.labels() != levels {
        return Err(WeightingError::Shape(
            "level matrix labels do not match the levels".into(),
        ));
    }
    let e = principal_eigen(level_matrix)?;
    let report = consistency(level_matrix, &e);
    if !report.acceptable {
        return Err(WeightingError::InconsistentMatrix {
            matrix: "levels".into(),
            consistency_ratio: report.consistency_ratio,
        });
    }
    Ok(ImportanceScale {
        levels: levels.to_vec(),
        level_matrix: level_matrix.clone(),
        level_weights: e.weights,
        consistency: report,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleWeights {
    /// Weight of the level each disorder was rated at.
    pub raw: WeightVector,
    /// `raw` divided by its sum.
    pub normalized: WeightVector,
}

/// Rates every disorder of `universe` at one level of `scale`.
pub fn assign_scale_weights(
    scale: &ImportanceScale,
    universe: &DisorderSet,
    assignment: &IndexMap<String, String>,
) -> Result<ScaleWeights, WeightingError> {
    if let Some(extra) = assignment.keys().find(|id| !universe.contains(id)) {
        return Err(WeightingError::UnknownDisorder(extra.clone()));
    }
    let mut raw = Vec::with_capacity(universe.len());
    for id in universe.ids() {
        let level = assignment
            .get(id.as_str())
            .ok_or_else(|| WeightingError::UnassignedDisorder(id.to_string()))?;
        let w = scale
            .level_weights
            .get(level)
            .ok_or_else(|| WeightingError::UnknownLevel(level.clone()))?;
        raw.push((id.to_string(), w));
    }
    let raw = WeightVector::from_pairs(raw);
    Ok(ScaleWeights {
        normalized: raw.clone().normalized(),
        raw,
    })
}
