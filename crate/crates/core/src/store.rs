//! Durable clinician sessions, one JSON document per session under
//! `<data_dir>/sessions/<id>.json`.
//!
//! Writes go to a temporary file in the same directory and are renamed into
//! place, so a failed write leaves the previous revision intact. Mutations
//! of one session are serialized through a per-id lock and guarded by an
//! expected revision.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use chrono::{DateTime, SubsecRound, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::disorder::{Disorder, DisorderSet, DisorderSetError};
use crate::order::{build_relation, PairJudgment};
use crate::pipeline::ScaleInput;
use crate::trisection::TrisectionParams;
use crate::weighting::{Hierarchy, WeightingError, MAX_ORDER};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("session `{0}` not found")]
    NotFound(String),
    #[error("revision conflict: expected {expected}, stored revision is {actual}")]
    RevisionConflict { expected: u64, actual: u64 },
    #[error("invalid disorder set: {0}")]
    InvalidDisorderSet(#[from] DisorderSetError),
    #[error("invalid mutation: {0}")]
    Validation(Box<crate::Error>),
    #[error("corrupt session document {}: {message}", path.display())]
    CorruptDocument { path: PathBuf, message: String },
    #[error("storage failure at {}: {source}", path.display())]
    Storage {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl StoreError {
    fn io(path: &Path, source: io::Error) -> Self {
        StoreError::Storage {
            path: path.to_owned(),
            source,
        }
    }

    fn invalid(e: impl Into<crate::Error>) -> Self {
        StoreError::Validation(Box::new(e.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Session {
    pub schema_version: u32,
    pub id: String,
    pub revision: u64,
    pub created_at: DateTime<Utc>,
    pub updated_at: DateTime<Utc>,
    pub disorders: DisorderSet,
    /// Sorted by `(first, second)`; pairs not listed are unjudged.
    pub judgments: Vec<PairJudgment>,
    pub hierarchy: Option<Hierarchy>,
    pub scale: Option<ScaleInput>,
    pub trisection_params: Option<TrisectionParams>,
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionSummary {
    pub id: String,
    pub created_at: DateTime<Utc>,
    pub updated_at: DateTime<Utc>,
    pub disorder_count: usize,
    pub revision: u64,
}

impl From<&Session> for SessionSummary {
    fn from(s: &Session) -> Self {
        SessionSummary {
            id: s.id.clone(),
            created_at: s.created_at,
            updated_at: s.updated_at,
            disorder_count: s.disorders.len(),
            revision: s.revision,
        }
    }
}

/// One committed change to a session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", content = "value", rename_all = "snake_case")]
pub enum Mutation {
    SetJudgments(Vec<PairJudgment>),
    /// Adds a judgment, replacing any existing one on the same unordered pair.
    PutJudgment(PairJudgment),
    SetHierarchy(Option<Hierarchy>),
    SetScale(Option<ScaleInput>),
    SetTrisectionParams(Option<TrisectionParams>),
    SetNotes(String),
}

fn sort_judgments(js: &mut [PairJudgment]) {
    js.sort_by(|a, b| (&a.first, &a.second).cmp(&(&b.first, &b.second)));
}

fn check_scale(scale: &ScaleInput, universe: &DisorderSet) -> Result<(), StoreError> {
    if !(2..=MAX_ORDER).contains(&scale.levels.len()) {
        return Err(StoreError::invalid(WeightingError::Shape(format!(
            "a scale needs between 2 and {MAX_ORDER} levels"
        ))));
    }
    if scale.matrix.labels() != scale.levels.as_slice() {
        return Err(StoreError::invalid(WeightingError::Shape(
            "level matrix labels do not match the levels".into(),
        )));
    }
    let report = scale.matrix.validate();
    if !report.is_valid() {
        return Err(StoreError::invalid(WeightingError::InvalidMatrix {
            matrix: Some("levels".into()),
            report,
        }));
    }
    for (disorder, level) in &scale.assignment {
        if !universe.contains(disorder) {
            return Err(StoreError::invalid(WeightingError::UnknownDisorder(disorder.clone())));
        }
        if !scale.levels.contains(level) {
            return Err(StoreError::invalid(WeightingError::UnknownLevel(level.clone())));
        }
    }
    Ok(())
}

impl Session {
    /// Applies `m` in place after validating it against the disorder set.
    /// Matrices must be well formed but need not be consistent yet.
    fn apply(&mut self, m: Mutation) -> Result<(), StoreError> {
        match m {
            Mutation::SetJudgments(mut js) => {
                build_relation(&self.disorders, &js).map_err(StoreError::invalid)?;
                sort_judgments(&mut js);
                self.judgments = js;
            }
            Mutation::PutJudgment(j) => {
                let mut js: Vec<PairJudgment> = self
                    .judgments
                    .iter()
                    .filter(|o| {
                        !((o.first == j.first && o.second == j.second) || (o.first == j.second && o.second == j.first))
                    })
                    .cloned()
                    .collect();
                js.push(j);
                build_relation(&self.disorders, &js).map_err(StoreError::invalid)?;
                sort_judgments(&mut js);
                self.judgments = js;
            }
            Mutation::SetHierarchy(h) => {
                if let Some(h) = &h {
                    h.check_partition(&self.disorders).map_err(StoreError::invalid)?;
                    h.check_matrices().map_err(StoreError::invalid)?;
                }
                self.hierarchy = h;
            }
            Mutation::SetScale(s) => {
                if let Some(s) = &s {
                    check_scale(s, &self.disorders)?;
                }
                self.scale = s;
            }
            Mutation::SetTrisectionParams(p) => {
                if let Some(p) = &p {
                    p.validate().map_err(StoreError::invalid)?;
                }
                self.trisection_params = p;
            }
            Mutation::SetNotes(n) => self.notes = n,
        }
        Ok(())
    }
}

fn now() -> DateTime<Utc> {
    Utc::now().trunc_subsecs(0)
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.len() <= 64 && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-')
}

#[derive(Debug)]
pub struct SessionStore {
    dir: PathBuf,
    locks: Mutex<HashMap<String, Arc<Mutex<()>>>>,
}

impl SessionStore {
    /// Opens (creating if needed) the store rooted at `data_dir`.
    pub fn open(data_dir: impl AsRef<Path>) -> Result<Self, StoreError> {
        let dir = data_dir.as_ref().join("sessions");
        fs::create_dir_all(&dir).map_err(|e| StoreError::io(&dir, e))?;
        Ok(SessionStore {
            dir,
            locks: Mutex::new(HashMap::new()),
        })
    }

    pub fn sessions_dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.json"))
    }

    fn lock(&self, id: &str) -> Arc<Mutex<()>> {
        let mut locks = self.locks.lock().unwrap_or_else(|e| e.into_inner());
        locks.entry(id.to_owned()).or_default().clone()
    }

    fn write(&self, s: &Session) -> Result<(), StoreError> {
        let path = self.path(&s.id);
        let body = crate::pipeline::to_json(s);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| StoreError::io(&self.dir, e))?;
        tmp.write_all(body.as_bytes())
            .map_err(|e| StoreError::io(tmp.path(), e))?;
        tmp.as_file().sync_all().map_err(|e| StoreError::io(tmp.path(), e))?;
        tmp.persist(&path).map_err(|e| StoreError::io(&path, e.error))?;
        Ok(())
    }

    pub fn create(&self, disorders: Vec<Disorder>, notes: impl Into<String>) -> Result<Session, StoreError> {
        let disorders = DisorderSet::new(disorders)?;
        let t = now();
        let s = Session {
            schema_version: SCHEMA_VERSION,
            id: uuid::Uuid::new_v4().to_string(),
            revision: 1,
            created_at: t,
            updated_at: t,
            disorders,
            judgments: Vec::new(),
            hierarchy: None,
            scale: None,
            trisection_params: None,
            notes: notes.into(),
        };
        self.write(&s)?;
        Ok(s)
    }

    pub fn load(&self, id: &str) -> Result<Session, StoreError> {
        if !valid_id(id) {
            return Err(StoreError::NotFound(id.to_owned()));
        }
        let path = self.path(id);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Err(StoreError::NotFound(id.to_owned())),
            Err(e) => return Err(StoreError::io(&path, e)),
        };
        let s: Session = serde_json::from_str(&text).map_err(|e| StoreError::CorruptDocument {
            path: path.clone(),
            message: e.to_string(),
        })?;
        if s.schema_version != SCHEMA_VERSION || s.id != id {
            return Err(StoreError::CorruptDocument {
                path,
                message: format!("schema_version {} / id `{}` not understood", s.schema_version, s.id),
            });
        }
        Ok(s)
    }

    /// Summaries of every readable session, oldest first.
    pub fn list(&self) -> Result<Vec<SessionSummary>, StoreError> {
        let mut out = Vec::new();
        for entry in fs::read_dir(&self.dir).map_err(|e| StoreError::io(&self.dir, e))? {
            let entry = entry.map_err(|e| StoreError::io(&self.dir, e))?;
            let name = entry.file_name();
            let Some(id) = name.to_str().and_then(|n| n.strip_suffix(".json")) else {
                continue;
            };
            if !valid_id(id) {
                continue;
            }
            out.push(SessionSummary::from(&self.load(id)?));
        }
        out.sort_by(|a, b| (a.created_at, &a.id).cmp(&(b.created_at, &b.id)));
        Ok(out)
    }

    /// Applies `mutation` if the stored revision equals `expected_revision`.
    /// Nothing is written unless the whole mutation validates.
    pub fn update(&self, id: &str, expected_revision: u64, mutation: Mutation) -> Result<Session, StoreError> {
        let lock = self.lock(id);
        let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
        let mut s = self.load(id)?;
        if s.revision != expected_revision {
            return Err(StoreError::RevisionConflict {
                expected: expected_revision,
                actual: s.revision,
            });
        }
        s.apply(mutation)?;
        s.revision += 1;
        s.updated_at = now();
        self.write(&s)?;
        Ok(s)
    }
}
