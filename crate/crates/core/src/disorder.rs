//! Candidate disorders and the ordered universe they live in.

use std::borrow::Borrow;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Opaque, non-empty identifier of a candidate disorder.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DisorderId(String);

impl DisorderId {
    pub fn new(id: impl Into<String>) -> Self {
        DisorderId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for DisorderId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for DisorderId {
    fn from(s: &str) -> Self {
        DisorderId(s.to_owned())
    }
}

impl From<String> for DisorderId {
    fn from(s: String) -> Self {
        DisorderId(s)
    }
}

impl AsRef<str> for DisorderId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for DisorderId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// A disorder under diagnosis.
///
/// Serialized as a bare id string when the label equals the id, otherwise as
/// `{"id": ..., "label": ...}`. Both forms are accepted on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "DisorderRepr", into = "DisorderRepr")]
pub struct Disorder {
    pub id: DisorderId,
    pub label: String,
}

impl Disorder {
    pub fn new(id: impl Into<String>, label: impl Into<String>) -> Self {
        Disorder {
            id: DisorderId::new(id),
            label: label.into(),
        }
    }
}

impl From<&str> for Disorder {
    fn from(id: &str) -> Self {
        Disorder::new(id, id)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DisorderRepr {
    Id(DisorderId),
    Full { id: DisorderId, label: String },
}

impl From<DisorderRepr> for Disorder {
    fn from(r: DisorderRepr) -> Self {
        match r {
            DisorderRepr::Id(id) => Disorder {
                label: id.0.clone(),
                id,
            },
            DisorderRepr::Full { id, label } => Disorder { id, label },
        }
    }
}

impl From<Disorder> for DisorderRepr {
    fn from(d: Disorder) -> Self {
        if d.label == d.id.0 {
            DisorderRepr::Id(d.id)
        } else {
            DisorderRepr::Full {
                id: d.id,
                label: d.label,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DisorderSetError {
    #[error("disorder set is empty")]
    Empty,
    #[error("disorder id must be non-empty")]
    EmptyId,
    #[error("duplicate disorder id `{0}`")]
    DuplicateId(DisorderId),
}

/// The universe of candidate disorders. Insertion order is the canonical
/// tie-break order used everywhere downstream.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "Vec<Disorder>", into = "Vec<Disorder>")]
pub struct DisorderSet {
    disorders: Vec<Disorder>,
    index: HashMap<DisorderId, usize>,
}

impl PartialEq for DisorderSet {
    fn eq(&self, other: &Self) -> bool {
        self.disorders == other.disorders
    }
}

impl Eq for DisorderSet {}

impl DisorderSet {
    pub fn new(disorders: Vec<Disorder>) -> Result<Self, DisorderSetError> {
        if disorders.is_empty() {
            return Err(DisorderSetError::Empty);
        }
        let mut index = HashMap::with_capacity(disorders.len());
        for (i, d) in disorders.iter().enumerate() {
            if d.id.0.is_empty() {
                return Err(DisorderSetError::EmptyId);
            }
            if index.insert(d.id.clone(), i).is_some() {
                return Err(DisorderSetError::DuplicateId(d.id.clone()));
            }
        }
        Ok(DisorderSet { disorders, index })
    }

    /// Builds a set whose labels equal the ids.
    pub fn from_ids<I, S>(ids: I) -> Result<Self, DisorderSetError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self::new(ids.into_iter().map(|s| Disorder::from(s.as_ref())).collect())
    }

    pub fn len(&self) -> usize {
        self.disorders.len()
    }

    /// Always false for a constructed set; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.disorders.is_empty()
    }

    pub fn disorders(&self) -> &[Disorder] {
        &self.disorders
    }

    pub fn ids(&self) -> impl Iterator<Item = &DisorderId> + '_ {
        self.disorders.iter().map(|d| &d.id)
    }

    pub fn id(&self, position: usize) -> &DisorderId {
        &self.disorders[position].id
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }
}

impl TryFrom<Vec<Disorder>> for DisorderSet {
    type Error = DisorderSetError;

    fn try_from(v: Vec<Disorder>) -> Result<Self, Self::Error> {
        DisorderSet::new(v)
    }
}

impl From<DisorderSet> for Vec<Disorder> {
    fn from(s: DisorderSet) -> Self {
        s.disorders
    }
}
