//! Worked examples used throughout the tests, the guide and the CLI samples.
//!
//! Three five-disorder relations (one linear, one weak, one semiorder), a
//! six-cluster comparison matrix and a five-level intensity matrix.

use crate::disorder::DisorderSet;
use crate::order::{build_relation, PairJudgment, StrictRelation};
use crate::weighting::ComparisonMatrix;

pub const FIVE: [&str; 5] = ["d1", "d2", "d3", "d4", "d5"];

pub const LINEAR_PAIRS: [(&str, &str); 10] = [
    ("d1", "d5"),
    ("d1", "d4"),
    ("d1", "d2"),
    ("d3", "d1"),
    ("d3", "d2"),
    ("d3", "d4"),
    ("d3", "d5"),
    ("d5", "d4"),
    ("d5", "d2"),
    ("d4", "d2"),
];

pub const WEAK_PAIRS: [(&str, &str); 8] = [
    ("d1", "d3"),
    ("d1", "d4"),
    ("d1", "d5"),
    ("d2", "d3"),
    ("d2", "d4"),
    ("d2", "d5"),
    ("d3", "d4"),
    ("d3", "d5"),
];

pub const SEMIORDER_PAIRS: [(&str, &str); 8] = [
    ("d1", "d2"),
    ("d1", "d3"),
    ("d1", "d4"),
    ("d1", "d5"),
    ("d2", "d4"),
    ("d2", "d5"),
    ("d3", "d5"),
    ("d4", "d5"),
];

pub fn five_disorders() -> DisorderSet {
    DisorderSet::from_ids(FIVE).expect("static ids are valid")
}

/// `PREFERRED` judgments for each listed pair.
pub fn judgments(pairs: &[(&str, &str)]) -> Vec<PairJudgment> {
    pairs.iter().map(|&(a, b)| PairJudgment::preferred(a, b)).collect()
}

fn relation(pairs: &[(&str, &str)]) -> StrictRelation {
    build_relation(&five_disorders(), &judgments(pairs)).expect("static judgments are valid")
}

pub fn linear_relation() -> StrictRelation {
    relation(&LINEAR_PAIRS)
}

pub fn weak_relation() -> StrictRelation {
    relation(&WEAK_PAIRS)
}

pub fn semiorder_relation() -> StrictRelation {
    relation(&SEMIORDER_PAIRS)
}

pub const CLUSTERS: [&str; 6] = ["D1", "D2", "D3", "D4", "D5", "D6"];

/// Six-cluster comparison matrix, entries as judged.
pub const CLUSTER_ROWS: [[&str; 6]; 6] = [
    ["1", "3", "1/2", "4", "2", "1/3"],
    ["1/3", "1", "1/7", "1", "1/2", "1/9"],
    ["2", "7", "1", "9", "5", "1/2"],
    ["1/4", "1", "1/9", "1", "1/2", "1/9"],
    ["1/2", "2", "1/5", "2", "1", "1/6"],
    ["3", "9", "2", "9", "6", "1"],
];

/// Reference weights for [`cluster_matrix`], rounded to three places.
pub const CLUSTER_WEIGHTS: [f64; 6] = [0.140, 0.041, 0.290, 0.038, 0.071, 0.420];
pub const CLUSTER_LAMBDA_MAX: f64 = 6.048;
pub const CLUSTER_CONSISTENCY_RATIO: f64 = 0.00762;

pub const LEVELS: [&str; 5] = ["A", "B", "C", "D", "E"];

/// Five intensity levels, from significantly matched (A) to not matched (E).
pub const LEVEL_ROWS: [[&str; 5]; 5] = [
    ["1", "2", "3", "5", "9"],
    ["1/2", "1", "2", "4", "6"],
    ["1/3", "1/2", "1", "2", "3"],
    ["1/5", "1/4", "1/2", "1", "2"],
    ["1/9", "1/6", "1/3", "1/2", "1"],
];

pub const LEVEL_WEIGHTS: [f64; 5] = [0.450, 0.277, 0.147, 0.081, 0.046];
pub const LEVEL_LAMBDA_MAX: f64 = 5.024;
pub const LEVEL_CONSISTENCY_RATIO: f64 = 0.00533;

fn parse_rows<const N: usize>(labels: [&str; N], rows: [[&str; N]; N]) -> ComparisonMatrix {
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| crate::weighting::parse_entry(e).expect("static entry"))
                .collect()
        })
        .collect();
    ComparisonMatrix::new(labels.iter().map(|s| s.to_string()).collect(), rows).expect("static matrix is square")
}

pub fn cluster_matrix() -> ComparisonMatrix {
    parse_rows(CLUSTERS, CLUSTER_ROWS)
}

pub fn level_matrix() -> ComparisonMatrix {
    parse_rows(LEVELS, LEVEL_ROWS)
}
