//! End-to-end analyses over exchange documents. Both the command-line tool
//! and the HTTP service render their results through these functions, so
//! identical inputs produce byte-identical JSON.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::disorder::{Disorder, DisorderId, DisorderSet};
use crate::order::{
    analyze, build_relation, derive_indifference, rank, unjudged_pairs, AxiomReport, IndifferenceRelation, OrderClass,
    PairJudgment, Ranking, StrictRelation,
};
use crate::trisection::{esv, topo_rank, EsvList};
use crate::weighting::{
    assign_scale_weights, build_importance_scale, ComparisonMatrix, ConsistencyReport, WeightVector,
};
use crate::Error;

/// `{disorders: [...], judgments: [{first, second, verdict}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDocument {
    pub disorders: Vec<Disorder>,
    #[serde(default, serialize_with = "sorted_judgments")]
    pub judgments: Vec<PairJudgment>,
}

fn sorted_judgments<S: Serializer>(js: &[PairJudgment], ser: S) -> Result<S::Ok, S::Error> {
    let mut v: Vec<&PairJudgment> = js.iter().collect();
    v.sort_by(|a, b| (&a.first, &a.second).cmp(&(&b.first, &b.second)));
    v.serialize(ser)
}

impl RelationDocument {
    pub fn universe(&self) -> Result<DisorderSet, Error> {
        Ok(DisorderSet::new(self.disorders.clone())?)
    }

    pub fn relation(&self) -> Result<StrictRelation, Error> {
        Ok(build_relation(&self.universe()?, &self.judgments)?)
    }
}

/// Axiom reports and the resulting class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub class: OrderClass,
    pub axioms: Vec<AxiomReport>,
}

pub fn validate_relation(rel: &StrictRelation) -> ValidateReport {
    let c = analyze(rel);
    ValidateReport {
        class: c.class,
        axioms: c.axioms,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub class: OrderClass,
    pub ranking: Ranking,
}

/// Ranks by the relation's class; unclassified relations are an error that
/// carries the failing axiom reports.
pub fn rank_relation(rel: &StrictRelation) -> Result<RankReport, Error> {
    let (c, ranking) = rank(rel);
    match ranking {
        Some(ranking) => Ok(RankReport {
            class: c.class,
            ranking,
        }),
        None => Err(Error::Unclassified(c.axioms.into_iter().filter(|r| !r.holds).collect())),
    }
}

/// Everything the qualitative stage knows about a set of judgments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub class: OrderClass,
    pub axioms: Vec<AxiomReport>,
    pub ranking: Option<Ranking>,
    pub indifference: IndifferenceRelation,
    /// Pairs without any judgment; they count as indifferent.
    pub unjudged: Vec<(DisorderId, DisorderId)>,
    pub esv: EsvList,
    /// `None` when the relation has a cycle.
    pub topological_order: Option<Vec<DisorderId>>,
}

pub fn analyze_judgments(universe: &DisorderSet, judgments: &[PairJudgment]) -> Result<AnalysisReport, Error> {
    let rel = build_relation(universe, judgments)?;
    let (c, ranking) = rank(&rel);
    Ok(AnalysisReport {
        class: c.class,
        axioms: c.axioms,
        ranking,
        indifference: derive_indifference(&rel),
        unjudged: unjudged_pairs(universe, judgments),
        esv: esv(&rel),
        topological_order: topo_rank(&rel).ok(),
    })
}

/// `{levels, matrix, assignment}`: an importance scale and the level each
/// disorder is rated at.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleInput {
    pub levels: Vec<String>,
    pub matrix: ComparisonMatrix,
    #[serde(default)]
    pub assignment: IndexMap<String, String>,
}

impl ScaleInput {
    /// The rated disorders, in assignment order.
    pub fn assigned_universe(&self) -> Result<DisorderSet, Error> {
        Ok(DisorderSet::from_ids(self.assignment.keys())?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleReport {
    pub level_weights: WeightVector,
    pub consistency: ConsistencyReport,
    pub raw: WeightVector,
    pub normalized: WeightVector,
}

pub fn scale_weights(input: &ScaleInput, universe: &DisorderSet) -> Result<ScaleReport, Error> {
    let scale = build_importance_scale(&input.levels, &input.matrix)?;
    let w = assign_scale_weights(&scale, universe, &input.assignment)?;
    Ok(ScaleReport {
        level_weights: scale.level_weights,
        consistency: scale.consistency,
        raw: w.raw,
        normalized: w.normalized,
    })
}

/// Pretty JSON with a trailing newline; the one rendering used for results.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}
