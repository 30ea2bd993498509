use std::collections::HashSet;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{
    consistency, principal_eigen, ComparisonMatrix, ConsistencyReport, WeightVector, WeightingError, MAX_ORDER,
};
use crate::disorder::DisorderSet;

/// Name under which the top-level cluster matrix is reported.
pub const CLUSTER_MATRIX_NAME: &str = "clusters";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cluster {
    pub id: String,
    pub members: Vec<String>,
    /// Comparison of the members; may be omitted for single-member clusters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<ComparisonMatrix>,
}

/// Root → clusters → disorders. Deeper nesting cannot be expressed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Hierarchy {
    pub clusters: Vec<Cluster>,
    pub cluster_matrix: ComparisonMatrix,
}

impl Hierarchy {
    /// Every label of `m` becomes its own single-member cluster.
    pub fn flat(m: ComparisonMatrix) -> Self {
        Hierarchy {
            clusters: m
                .labels()
                .iter()
                .map(|l| Cluster {
                    id: l.clone(),
                    members: vec![l.clone()],
                    matrix: None,
                })
                .collect(),
            cluster_matrix: m,
        }
    }

    /// Disorder ids in cluster order.
    pub fn members(&self) -> impl Iterator<Item = &str> + '_ {
        self.clusters.iter().flat_map(|c| c.members.iter().map(String::as_str))
    }

    /// Structural checks: cluster and member bounds, labels matching matrices,
    /// and no disorder in two clusters.
    pub fn check_structure(&self) -> Result<(), WeightingError> {
        let part = |msg: String| Err(WeightingError::Partition(msg));
        if self.clusters.is_empty() {
            return part("hierarchy has no clusters".into());
        }
        if self.clusters.len() > MAX_ORDER {
            return part(format!(
                "{} clusters exceed the limit of {MAX_ORDER}",
                self.clusters.len()
            ));
        }
        let ids: Vec<&str> = self.clusters.iter().map(|c| c.id.as_str()).collect();
        if self
            .cluster_matrix
            .labels()
            .iter()
            .map(String::as_str)
            .ne(ids.iter().copied())
        {
            return part("cluster matrix labels do not match the cluster ids in order".into());
        }
        let mut seen = HashSet::new();
        for c in &self.clusters {
            if c.members.is_empty() {
                return part(format!("cluster `{}` has no members", c.id));
            }
            if c.members.len() > MAX_ORDER {
                return part(format!(
                    "cluster `{}` has {} members, limit is {MAX_ORDER}",
                    c.id,
                    c.members.len()
                ));
            }
            for m in &c.members {
                if !seen.insert(m.as_str()) {
                    return part(format!("disorder `{m}` appears in more than one cluster"));
                }
            }
            match &c.matrix {
                Some(mx) if mx.labels() != c.members.as_slice() => {
                    return part(format!("matrix labels of cluster `{}` do not match its members", c.id));
                }
                None if c.members.len() > 1 => {
                    return part(format!("cluster `{}` has several members but no matrix", c.id));
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Structural checks plus: the clusters cover exactly `universe`.
    pub fn check_partition(&self, universe: &DisorderSet) -> Result<(), WeightingError> {
        self.check_structure()?;
        if let Some(unknown) = self.members().find(|m| !universe.contains(m)) {
            return Err(WeightingError::Partition(format!("unknown disorder `{unknown}`")));
        }
        let covered: HashSet<&str> = self.members().collect();
        if let Some(missing) = universe.ids().find(|id| !covered.contains(id.as_str())) {
            return Err(WeightingError::Partition(format!(
                "disorder `{missing}` is in no cluster"
            )));
        }
        Ok(())
    }

    /// Numeric validation of every matrix (errors only).
    pub fn check_matrices(&self) -> Result<(), WeightingError> {
        let named = std::iter::once((CLUSTER_MATRIX_NAME, &self.cluster_matrix)).chain(
            self.clusters
                .iter()
                .filter_map(|c| c.matrix.as_ref().map(|m| (c.id.as_str(), m))),
        );
        for (name, m) in named {
            let report = m.validate();
            if !report.is_valid() {
                return Err(WeightingError::InvalidMatrix {
                    matrix: Some(name.to_owned()),
                    report,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HierarchyWeights {
    /// Weight of every disorder, `cluster weight × local weight`.
    pub global: WeightVector,
    pub cluster_weights: WeightVector,
    /// Local weights of the members of each cluster.
    pub per_cluster: IndexMap<String, WeightVector>,
    /// One report per matrix, the cluster matrix first under `"clusters"`.
    pub reports: IndexMap<String, ConsistencyReport>,
}

fn weigh_matrix(name: &str, m: &ComparisonMatrix) -> Result<(WeightVector, ConsistencyReport), WeightingError> {
    let e = principal_eigen(m).map_err(|err| match err {
        WeightingError::InvalidMatrix { report, .. } => WeightingError::InvalidMatrix {
            matrix: Some(name.to_owned()),
            report,
        },
        other => other,
    })?;
    let report = consistency(m, &e);
    if !report.acceptable {
        return Err(WeightingError::InconsistentMatrix {
            matrix: name.to_owned(),
            consistency_ratio: report.consistency_ratio,
        });
    }
    Ok((e.weights, report))
}

/// Top-down weighting: cluster weights from the cluster matrix, local weights
/// within each cluster, and global weight as their product.
///
/// Every matrix must be valid and have a consistency ratio below 10%.
pub fn weigh_hierarchy(h: &Hierarchy) -> Result<HierarchyWeights, WeightingError> {
    h.check_structure()?;
    h.check_matrices()?;

    let mut reports = IndexMap::new();
    let (cluster_weights, r) = weigh_matrix(CLUSTER_MATRIX_NAME, &h.cluster_matrix)?;
    reports.insert(CLUSTER_MATRIX_NAME.to_owned(), r);

    let mut per_cluster = IndexMap::new();
    let mut global = Vec::new();
    for c in &h.clusters {
        let implicit;
        let m = match &c.matrix {
            Some(m) => m,
            None => {
                implicit = ComparisonMatrix::uniform(c.members.iter().cloned());
                &implicit
            }
        };
        let (local, r) = weigh_matrix(&c.id, m)?;
        reports.insert(c.id.clone(), r);
        let cw = cluster_weights.get(&c.id).expect("labels checked");
        global.extend(local.iter().map(|(id, w)| (id.to_owned(), cw * w)));
        per_cluster.insert(c.id.clone(), local);
    }

    Ok(HierarchyWeights {
        global: WeightVector::from_pairs(global),
        cluster_weights,
        per_cluster,
        reports,
    })
}
