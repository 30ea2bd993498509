//! Prioritizing disorders for clinical attention.
//!
//! A clinician's pairwise judgments are checked against the axioms of
//! linear orders, weak orders and semiorders ([`order`]), turned into numeric
//! weights with eigenvector methods ([`weighting`]), and split into high,
//! medium and low priority regions ([`trisection`]). Sessions persist the
//! inputs between visits ([`store`]); [`pipeline`] wires the stages together
//! for the command-line tool and HTTP service.
//!
//! ```
//! use csa_core::fixtures;
//! use csa_core::order::{classify, OrderClass};
//!
//! assert_eq!(classify(&fixtures::weak_relation()), OrderClass::Weak);
//! ```

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/order-relations.md")]
    mod order_relations {}
    #[doc = include_str!("../../../book/src/weighting.md")]
    mod weighting {}
    #[doc = include_str!("../../../book/src/trisection.md")]
    mod trisection {}
    #[doc = include_str!("../../../book/src/sessions.md")]
    mod sessions {}
}

pub mod disorder;
pub mod fixtures;
pub mod order;
pub mod pipeline;
pub mod store;
pub mod trisection;
pub mod weighting;

use thiserror::Error;

pub use disorder::{Disorder, DisorderId, DisorderSet, DisorderSetError};

/// Any failure from the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Disorders(#[from] DisorderSetError),
    #[error(transparent)]
    Order(#[from] order::OrderError),
    #[error("relation is not a linear order, weak order or semiorder")]
    Unclassified(Vec<order::AxiomReport>),
    #[error(transparent)]
    Weighting(#[from] weighting::WeightingError),
    #[error(transparent)]
    Trisection(#[from] trisection::TrisectionError),
    #[error(transparent)]
    Store(#[from] store::StoreError),
}
