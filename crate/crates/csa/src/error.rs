//! The error document shared by the HTTP service and the command-line tool.

use csa_core::order::OrderError;
use csa_core::store::StoreError;
use csa_core::trisection::TrisectionError;
use csa_core::weighting::WeightingError;
use csa_core::DisorderSetError;
use serde::Serialize;
use serde_json::{json, Value};

/// Broad class of a failure; fixes the HTTP status and the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Malformed or contradictory input.
    Validation,
    NotFound,
    Conflict,
    /// Input is well formed but the requested method does not apply.
    Precondition,
    Storage,
    Usage,
}

impl Kind {
    pub fn status(self) -> u16 {
        match self {
            Kind::Validation | Kind::Usage => 400,
            Kind::NotFound => 404,
            Kind::Conflict => 409,
            Kind::Precondition => 422,
            Kind::Storage => 500,
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Kind::Usage => 2,
            _ => 1,
        }
    }
}

/// `{code, message, details}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub kind: Kind,
    pub code: &'static str,
    pub message: String,
    pub details: Value,
}

/// Every code an [`ApiError`] can carry.
pub const CODES: &[&str] = &[
    "EMPTY_DISORDER_SET",
    "EMPTY_DISORDER_ID",
    "DUPLICATE_DISORDER",
    "UNKNOWN_DISORDER",
    "DUPLICATE_JUDGMENT",
    "SELF_JUDGMENT",
    "UNKNOWN_PROPERTY",
    "NOT_LINEAR",
    "NOT_WEAK",
    "NOT_SEMIORDER",
    "UNCLASSIFIED",
    "MALFORMED_MATRIX",
    "BAD_ENTRY",
    "INVALID_MATRIX",
    "INCONSISTENT_MATRIX",
    "NOT_CONVERGED",
    "INVALID_HIERARCHY",
    "UNASSIGNED_DISORDER",
    "UNKNOWN_LEVEL",
    "BAD_PERCENTILES",
    "BAD_OFFSETS",
    "THRESHOLD_ORDER",
    "NO_VALUES",
    "CYCLE_DETECTED",
    "SESSION_NOT_FOUND",
    "REVISION_CONFLICT",
    "CORRUPT_DOCUMENT",
    "STORAGE_FAILURE",
    "MALFORMED_REQUEST",
    "MISSING_INPUT",
    "ROUTE_NOT_FOUND",
    "INPUT_UNREADABLE",
    "PORT_IN_USE",
    "DATA_DIR_UNWRITABLE",
    "INTERNAL",
];

impl ApiError {
    pub fn new(kind: Kind, code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            kind,
            code,
            message: message.into(),
            details: Value::Null,
        }
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = details;
        self
    }

    pub fn status(&self) -> u16 {
        self.kind.status()
    }

    pub fn exit_code(&self) -> i32 {
        self.kind.exit_code()
    }

    pub fn malformed(message: impl Into<String>) -> Self {
        ApiError::new(Kind::Validation, "MALFORMED_REQUEST", message)
    }

    pub fn missing(message: impl Into<String>) -> Self {
        ApiError::new(Kind::Precondition, "MISSING_INPUT", message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        ApiError::new(Kind::Storage, "INTERNAL", message)
    }
}

impl std::fmt::Display for ApiError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl std::error::Error for ApiError {}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

impl From<DisorderSetError> for ApiError {
    fn from(e: DisorderSetError) -> Self {
        let msg = e.to_string();
        match e {
            DisorderSetError::Empty => ApiError::new(Kind::Validation, "EMPTY_DISORDER_SET", msg),
            DisorderSetError::EmptyId => ApiError::new(Kind::Validation, "EMPTY_DISORDER_ID", msg),
            DisorderSetError::DuplicateId(id) => {
                ApiError::new(Kind::Validation, "DUPLICATE_DISORDER", msg).with_details(json!({ "id": id }))
            }
        }
    }
}

impl From<OrderError> for ApiError {
    fn from(e: OrderError) -> Self {
        let msg = e.to_string();
        match e {
            OrderError::UnknownDisorder(id) => {
                ApiError::new(Kind::Validation, "UNKNOWN_DISORDER", msg).with_details(json!({ "id": id }))
            }
            OrderError::DuplicatePair(a, b) => {
                ApiError::new(Kind::Validation, "DUPLICATE_JUDGMENT", msg).with_details(json!({ "pair": [a, b] }))
            }
            OrderError::SelfPair(id) => {
                ApiError::new(Kind::Validation, "SELF_JUDGMENT", msg).with_details(json!({ "id": id }))
            }
            OrderError::UnknownProperty(p) => {
                ApiError::new(Kind::Validation, "UNKNOWN_PROPERTY", msg).with_details(json!({ "property": p }))
            }
            OrderError::NotLinear(c) => {
                ApiError::new(Kind::Precondition, "NOT_LINEAR", msg).with_details(json!({ "class": c }))
            }
            OrderError::NotWeak(c) => {
                ApiError::new(Kind::Precondition, "NOT_WEAK", msg).with_details(json!({ "class": c }))
            }
            OrderError::NotSemiorder(c) => {
                ApiError::new(Kind::Precondition, "NOT_SEMIORDER", msg).with_details(json!({ "class": c }))
            }
        }
    }
}

impl From<WeightingError> for ApiError {
    fn from(e: WeightingError) -> Self {
        let msg = e.to_string();
        match e {
            WeightingError::Shape(_) => ApiError::new(Kind::Validation, "MALFORMED_MATRIX", msg),
            WeightingError::BadEntry(entry) => {
                ApiError::new(Kind::Validation, "BAD_ENTRY", msg).with_details(json!({ "entry": entry }))
            }
            WeightingError::InvalidMatrix { matrix, report } => ApiError::new(Kind::Validation, "INVALID_MATRIX", msg)
                .with_details(json!({ "matrix": matrix, "report": to_value(&report) })),
            WeightingError::InconsistentMatrix {
                matrix,
                consistency_ratio,
            } => ApiError::new(Kind::Precondition, "INCONSISTENT_MATRIX", msg)
                .with_details(json!({ "matrix": matrix, "consistency_ratio": consistency_ratio })),
            WeightingError::NotConverged { iterations, residual } => {
                ApiError::new(Kind::Precondition, "NOT_CONVERGED", msg)
                    .with_details(json!({ "iterations": iterations, "residual": residual }))
            }
            WeightingError::Partition(_) => ApiError::new(Kind::Validation, "INVALID_HIERARCHY", msg),
            WeightingError::UnassignedDisorder(id) => {
                ApiError::new(Kind::Precondition, "UNASSIGNED_DISORDER", msg).with_details(json!({ "id": id }))
            }
            WeightingError::UnknownLevel(level) => {
                ApiError::new(Kind::Validation, "UNKNOWN_LEVEL", msg).with_details(json!({ "level": level }))
            }
            WeightingError::UnknownDisorder(id) => {
                ApiError::new(Kind::Validation, "UNKNOWN_DISORDER", msg).with_details(json!({ "id": id }))
            }
        }
    }
}

impl From<TrisectionError> for ApiError {
    fn from(e: TrisectionError) -> Self {
        let msg = e.to_string();
        match e {
            TrisectionError::BadPercentiles { alpha, beta } => ApiError::new(Kind::Validation, "BAD_PERCENTILES", msg)
                .with_details(json!({ "alpha": alpha, "beta": beta })),
            TrisectionError::BadOffsets { k1, k2 } => {
                ApiError::new(Kind::Validation, "BAD_OFFSETS", msg).with_details(json!({ "k1": k1, "k2": k2 }))
            }
            TrisectionError::ThresholdOrder { h, l } => {
                ApiError::new(Kind::Validation, "THRESHOLD_ORDER", msg).with_details(json!({ "h": h, "l": l }))
            }
            TrisectionError::Empty => ApiError::new(Kind::Validation, "NO_VALUES", msg),
            TrisectionError::CycleDetected(cycle) => {
                ApiError::new(Kind::Precondition, "CYCLE_DETECTED", msg).with_details(json!({ "cycle": cycle }))
            }
        }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        let msg = e.to_string();
        match e {
            StoreError::NotFound(id) => {
                ApiError::new(Kind::NotFound, "SESSION_NOT_FOUND", msg).with_details(json!({ "id": id }))
            }
            StoreError::RevisionConflict { expected, actual } => {
                ApiError::new(Kind::Conflict, "REVISION_CONFLICT", msg)
                    .with_details(json!({ "expected": expected, "actual": actual }))
            }
            StoreError::InvalidDisorderSet(e) => e.into(),
            StoreError::Validation(e) => (*e).into(),
            StoreError::CorruptDocument { path, .. } => ApiError::new(Kind::Storage, "CORRUPT_DOCUMENT", msg)
                .with_details(json!({ "path": path.display().to_string() })),
            StoreError::Storage { path, .. } => ApiError::new(Kind::Storage, "STORAGE_FAILURE", msg)
                .with_details(json!({ "path": path.display().to_string() })),
        }
    }
}

impl From<csa_core::Error> for ApiError {
    fn from(e: csa_core::Error) -> Self {
        match e {
            csa_core::Error::Disorders(e) => e.into(),
            csa_core::Error::Order(e) => e.into(),
            csa_core::Error::Unclassified(failed) => ApiError::new(
                Kind::Precondition,
                "UNCLASSIFIED",
                "relation is not a linear order, weak order or semiorder",
            )
            .with_details(json!({ "failed_axioms": to_value(&failed) })),
            csa_core::Error::Weighting(e) => e.into(),
            csa_core::Error::Trisection(e) => e.into(),
            csa_core::Error::Store(e) => e.into(),
        }
    }
}
