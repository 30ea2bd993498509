use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::WeightingError;

/// Largest matrix order the eigenvector method is applied to.
pub const MAX_ORDER: usize = 9;

/// Relative tolerance for `m[i][j] * m[j][i] == 1`.
pub const RECIPROCITY_TOLERANCE: f64 = 1e-9;

/// One cell of a comparison matrix.
///
/// Fractions such as `"1/7"` are kept exactly; everything else is a decimal
/// rounded to twelve significant digits, which is also how it is serialized.
/// Whole numbers are the same entry whichever variant holds them.
#[derive(Debug, Clone, Copy)]
pub enum Entry {
    Fraction { num: u64, den: u64 },
    Decimal(f64),
}

impl Entry {
    pub fn decimal(x: f64) -> Entry {
        Entry::Decimal(x).canonical()
    }

    /// The form the entry serializes as.
    pub fn canonical(self) -> Entry {
        match self {
            Entry::Decimal(x) if x.fract() == 0.0 && (0.0..1e15).contains(&x) => {
                Entry::Fraction { num: x as u64, den: 1 }
            }
            Entry::Decimal(x) => Entry::Decimal(round_sig12(x)),
            f => f,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Entry::Fraction { num, den } => num as f64 / den as f64,
            Entry::Decimal(x) => x,
        }
    }
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        match (self.canonical(), other.canonical()) {
            (Entry::Fraction { num: a, den: b }, Entry::Fraction { num: c, den: d }) => (a, b) == (c, d),
            (Entry::Decimal(x), Entry::Decimal(y)) => x == y,
            _ => false,
        }
    }
}

impl From<f64> for Entry {
    fn from(x: f64) -> Self {
        Entry::decimal(x)
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Fraction { num, den } if *den == 1 => write!(f, "{num}"),
            Entry::Fraction { num, den } => write!(f, "{num}/{den}"),
            Entry::Decimal(x) => write!(f, "{x}"),
        }
    }
}

/// Rounds to twelve significant digits. Non-finite values pass through.
pub fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Parses `"3"`, `"0.25"`, `"1/7"` or `"2.5/3"`.
pub fn parse_entry(s: &str) -> Result<Entry, WeightingError> {
    let bad = || WeightingError::BadEntry(s.to_owned());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (n.trim(), d.trim());
            if let (Ok(num), Ok(den)) = (n.parse::<u64>(), d.parse::<u64>()) {
                if den == 0 {
                    return Err(bad());
                }
                return Ok(Entry::Fraction { num, den });
            }
            let num: f64 = n.parse().map_err(|_| bad())?;
            let den: f64 = d.parse().map_err(|_| bad())?;
            if den == 0.0 {
                return Err(bad());
            }
            Ok(Entry::decimal(num / den))
        }
        None => {
            let x: f64 = s.parse().map_err(|_| bad())?;
            Ok(Entry::decimal(x))
        }
    }
}

impl Serialize for Entry {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self.canonical() {
            Entry::Fraction { num, den: 1 } => ser.serialize_u64(num),
            Entry::Fraction { num, den } => ser.collect_str(&format_args!("{num}/{den}")),
            Entry::Decimal(x) => ser.serialize_f64(x),
        }
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Num(x) => Ok(Entry::decimal(x)),
            Raw::Text(s) => parse_entry(&s).map_err(serde::de::Error::custom),
        }
    }
}

/// Square matrix of pairwise importance ratios over labelled items.
///
/// Construction only checks the shape; the numeric invariants (order bound,
/// unit diagonal, positivity, reciprocity) are reported by
/// [`ComparisonMatrix::validate`] so that bad input can be explained cell by cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixDocument", into = "MatrixDocument")]
pub struct ComparisonMatrix {
    labels: Vec<String>,
    entries: Vec<Vec<Entry>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDocument {
    labels: Vec<String>,
    rows: Vec<Vec<Entry>>,
}

impl TryFrom<MatrixDocument> for ComparisonMatrix {
    type Error = WeightingError;

    fn try_from(d: MatrixDocument) -> Result<Self, Self::Error> {
        ComparisonMatrix::new(d.labels, d.rows)
    }
}

impl From<ComparisonMatrix> for MatrixDocument {
    fn from(m: ComparisonMatrix) -> Self {
        MatrixDocument {
            labels: m.labels,
            rows: m.entries,
        }
    }
}

impl ComparisonMatrix {
    pub fn new(labels: Vec<String>, rows: Vec<Vec<Entry>>) -> Result<Self, WeightingError> {
        if labels.is_empty() {
            return Err(WeightingError::Shape("matrix has no labels".into()));
        }
        if rows.len() != labels.len() {
            return Err(WeightingError::Shape(format!(
                "{} labels but {} rows",
                labels.len(),
                rows.len()
            )));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != labels.len()) {
            return Err(WeightingError::Shape(format!(
                "row {i} has {} entries, expected {}",
                r.len(),
                labels.len()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(WeightingError::Shape(format!("duplicate label `{dup}`")));
        }
        Ok(ComparisonMatrix { labels, entries: rows })
    }

    /// Builds a matrix from plain values; decimals are rounded to twelve
    /// significant digits.
    pub fn from_values<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self, WeightingError> {
        ComparisonMatrix::new(
            labels.into_iter().map(Into::into).collect(),
            rows.into_iter()
                .map(|r| r.into_iter().map(Entry::decimal).collect())
                .collect(),
        )
    }

    /// The perfectly consistent matrix `m[i][j] = w[i] / w[j]`.
    pub fn from_weights<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        weights: &[f64],
    ) -> Result<Self, WeightingError> {
        let rows = weights
            .iter()
            .map(|wi| weights.iter().map(|wj| wi / wj).collect())
            .collect();
        Self::from_values(labels, rows)
    }

    /// All-ones matrix: every item equally important.
    pub fn uniform<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let rows = vec![vec![Entry::Fraction { num: 1, den: 1 }; n]; n];
        ComparisonMatrix::new(labels, rows).expect("uniform matrix is square")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entry(&self, i: usize, j: usize) -> Entry {
        self.entries[i][j]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j].value()
    }

    pub fn values(&self) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.value()).collect())
            .collect()
    }

    /// Same matrix with rows and columns reordered so that new item `k` is
    /// old item `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        let entries = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| self.entries[i][j]).collect())
            .collect();
        ComparisonMatrix { labels, entries }
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.order();
        let mut report = ValidationReport::default();
        if n > MAX_ORDER {
            report.errors.push(MatrixIssue::OrderBound {
                order: n,
                max: MAX_ORDER,
            });
        }
        for i in 0..n {
            for j in 0..n {
                let v = self.get(i, j);
                if !v.is_finite() {
                    report.errors.push(MatrixIssue::NotFinite { row: i, col: j });
                } else if v <= 0.0 {
                    report.errors.push(MatrixIssue::NonPositive {
                        row: i,
                        col: j,
                        value: v,
                    });
                } else if i == j && v != 1.0 {
                    report.errors.push(MatrixIssue::Diagonal { index: i, value: v });
                } else if i != j && !is_saaty_value(v) {
                    report.warnings.push(MatrixIssue::OffScale {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (self.get(i, j), self.get(j, i));
                if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
                    continue;
                }
                if ((a * b) - 1.0).abs() > RECIPROCITY_TOLERANCE {
                    report.errors.push(MatrixIssue::Reciprocity {
                        row: j,
                        col: i,
                        value: b,
                        expected: 1.0 / a,
                    });
                }
            }
        }
        report
    }
}

/// Whether `v` is one of 1…9 or 1/2…1/9.
pub fn is_saaty_value(v: f64) -> bool {
    (1..=9).any(|k| {
        let k = k as f64;
        ((v - k) / k).abs() < 1e-9 || ((v * k) - 1.0).abs() < 1e-9
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MatrixIssue {
    OrderBound {
        order: usize,
        max: usize,
    },
    NotFinite {
        row: usize,
        col: usize,
    },
    NonPositive {
        row: usize,
        col: usize,
        value: f64,
    },
    Diagonal {
        index: usize,
        value: f64,
    },
    Reciprocity {
        row: usize,
        col: usize,
        value: f64,
        expected: f64,
    },
    OffScale {
        row: usize,
        col: usize,
        value: f64,
    },
}

impl fmt::Display for MatrixIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixIssue::OrderBound { order, max } => write!(f, "order {order} exceeds {max}"),
            MatrixIssue::NotFinite { row, col } => write!(f, "({row},{col}) is not finite"),
            MatrixIssue::NonPositive { row, col, value } => {
                write!(f, "({row},{col}) = {value} is not positive")
            }
            MatrixIssue::Diagonal { index, value } => {
                write!(f, "diagonal ({index},{index}) = {value}, expected 1")
            }
            MatrixIssue::Reciprocity {
                row,
                col,
                value,
                expected,
            } => write!(
                f,
                "({row},{col}) = {value} is not the reciprocal {expected} of ({col},{row})"
            ),
            MatrixIssue::OffScale { row, col, value } => {
                write!(f, "({row},{col}) = {value} is outside the 1-9 rating scale")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub errors: Vec<MatrixIssue>,
    pub warnings: Vec<MatrixIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}
