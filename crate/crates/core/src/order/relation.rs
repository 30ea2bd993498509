use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::OrderError;
use crate::disorder::{DisorderId, DisorderSet};

/// A clinician's verdict on an ordered pair `(first, second)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// `first` is preferred over `second`.
    Preferred,
    /// `first` is less preferred than `second`.
    LessPreferred,
    /// Neither is preferred; read as comorbidity.
    Indifferent,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairJudgment {
    pub first: DisorderId,
    pub second: DisorderId,
    pub verdict: Verdict,
}

impl PairJudgment {
    pub fn new(first: impl Into<DisorderId>, second: impl Into<DisorderId>, verdict: Verdict) -> Self {
        PairJudgment {
            first: first.into(),
            second: second.into(),
            verdict,
        }
    }

    pub fn preferred(first: &str, second: &str) -> Self {
        Self::new(first, second, Verdict::Preferred)
    }
}

/// Strict preference `>` over a disorder set, stored as a dense boolean
/// adjacency grid indexed by universe position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictRelation {
    universe: DisorderSet,
    grid: Vec<bool>,
}

impl StrictRelation {
    /// The empty relation: every pair is mutually indifferent.
    pub fn empty(universe: DisorderSet) -> Self {
        let n = universe.len();
        StrictRelation {
            universe,
            grid: vec![false; n * n],
        }
    }

    /// Builds a relation directly from `(x, y)` pairs meaning `x > y`.
    ///
    /// Unlike [`build_relation`] this does not forbid both directions of a
    /// pair, so it can describe cyclic or non-asymmetric relations.
    pub fn from_pairs<I, A, B>(universe: DisorderSet, pairs: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut rel = StrictRelation::empty(universe);
        for (a, b) in pairs {
            let i = rel.lookup(a.as_ref())?;
            let j = rel.lookup(b.as_ref())?;
            if i == j {
                return Err(OrderError::SelfPair(rel.universe.id(i).clone()));
            }
            rel.set(i, j);
        }
        Ok(rel)
    }

    fn lookup(&self, id: &str) -> Result<usize, OrderError> {
        self.universe
            .position(id)
            .ok_or_else(|| OrderError::UnknownDisorder(id.into()))
    }

    fn set(&mut self, i: usize, j: usize) {
        let n = self.len();
        self.grid[i * n + j] = true;
    }

    pub fn universe(&self) -> &DisorderSet {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    /// `x > y` by universe position.
    #[inline]
    pub fn prefers(&self, x: usize, y: usize) -> bool {
        self.grid[x * self.len() + y]
    }

    /// `x ∼ y`: neither direction holds. Reflexive for `x == y`.
    #[inline]
    pub fn indifferent(&self, x: usize, y: usize) -> bool {
        !self.prefers(x, y) && !self.prefers(y, x)
    }

    /// `x > y` by id; unknown ids are never related.
    pub fn prefers_id(&self, x: &str, y: &str) -> bool {
        match (self.universe.position(x), self.universe.position(y)) {
            (Some(i), Some(j)) => self.prefers(i, j),
            _ => false,
        }
    }

    /// Number of ordered pairs in the relation.
    pub fn pair_count(&self) -> usize {
        self.grid.iter().filter(|&&b| b).count()
    }

    /// Ordered pairs `(x, y)` with `x > y`, in universe order.
    pub fn pairs(&self) -> impl Iterator<Item = (&DisorderId, &DisorderId)> + '_ {
        let n = self.len();
        (0..n)
            .flat_map(move |i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.prefers(i, j))
            .map(|(i, j)| (self.universe.id(i), self.universe.id(j)))
    }

    /// How many elements `x` is strictly preferred over.
    pub fn dominated_count(&self, x: usize) -> usize {
        (0..self.len()).filter(|&y| self.prefers(x, y)).count()
    }
}

/// Maps a set of judgments onto the strict relation they induce.
///
/// `PREFERRED(x, y)` contributes `x > y`, `LESS_PREFERRED(x, y)` contributes
/// `y > x`, and `INDIFFERENT` contributes nothing. Unjudged pairs contribute
/// nothing either; indifference is only ever the absence of `>`.
pub fn build_relation(universe: &DisorderSet, judgments: &[PairJudgment]) -> Result<StrictRelation, OrderError> {
    let mut rel = StrictRelation::empty(universe.clone());
    let mut seen = HashSet::with_capacity(judgments.len());
    for j in judgments {
        let a = rel.lookup(j.first.as_str())?;
        let b = rel.lookup(j.second.as_str())?;
        if a == b {
            return Err(OrderError::SelfPair(j.first.clone()));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(OrderError::DuplicatePair(j.first.clone(), j.second.clone()));
        }
        match j.verdict {
            Verdict::Preferred => rel.set(a, b),
            Verdict::LessPreferred => rel.set(b, a),
            Verdict::Indifferent => {}
        }
    }
    Ok(rel)
}

/// Unordered indifferent pairs, each stored with the earlier universe member
/// first. The reflexive `x ∼ x` is implied and not listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndifferenceRelation {
    pairs: Vec<(DisorderId, DisorderId)>,
}

impl IndifferenceRelation {
    pub fn pairs(&self) -> &[(DisorderId, DisorderId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: &str, y: &str) -> bool {
        x == y
            || self
                .pairs
                .iter()
                .any(|(a, b)| (a.as_str() == x && b.as_str() == y) || (a.as_str() == y && b.as_str() == x))
    }
}

pub fn derive_indifference(rel: &StrictRelation) -> IndifferenceRelation {
    let n = rel.len();
    let u = rel.universe();
    let pairs = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| rel.indifferent(i, j))
        .map(|(i, j)| (u.id(i).clone(), u.id(j).clone()))
        .collect();
    IndifferenceRelation { pairs }
}

/// Unordered pairs that carry no judgment at all. The mathematics treats them
/// exactly like indifferent pairs; this exists so callers can tell the two apart.
pub fn unjudged_pairs(universe: &DisorderSet, judgments: &[PairJudgment]) -> Vec<(DisorderId, DisorderId)> {
    let judged: HashSet<(usize, usize)> = judgments
        .iter()
        .filter_map(|j| {
            let a = universe.position(j.first.as_str())?;
            let b = universe.position(j.second.as_str())?;
            Some((a.min(b), a.max(b)))
        })
        .collect();
    let n = universe.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|p| !judged.contains(p))
        .map(|(i, j)| (universe.id(i).clone(), universe.id(j).clone()))
        .collect()
}
