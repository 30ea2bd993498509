//! Qualitative analysis: a clinician's pairwise judgments as a strict
//! preference relation, the order axioms it satisfies, and the rankings it
//! induces.
//!
//! Three classes of relation are recognised, from most to least specific:
//!
//! | class       | axioms                                   | ranking            |
//! |-------------|------------------------------------------|--------------------|
//! | `LINEAR`    | asymmetric, transitive, weakly complete  | one chain          |
//! | `WEAK`      | asymmetric, negatively transitive        | ranked partition   |
//! | `SEMIORDER` | asymmetric, Ferrers, semitransitive      | set of chains      |
//!
//! Indifference `x ∼ y` is never stored; it is the absence of both `x > y`
//! and `y > x`, and is read clinically as comorbidity.

mod axioms;
mod ranking;
mod relation;

use thiserror::Error;

use crate::disorder::DisorderId;

pub use axioms::{analyze, check_axiom, classify, Axiom, AxiomReport, Classification, OrderClass, COUNTEREXAMPLE_CAP};
pub use ranking::{enumerate_semiorder_chains, rank_linear, rank_weak, Link, PresentationChain, Ranking};
pub use relation::{
    build_relation, derive_indifference, unjudged_pairs, IndifferenceRelation, PairJudgment, StrictRelation, Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("unknown disorder `{0}`")]
    UnknownDisorder(DisorderId),
    #[error("pair ({0}, {1}) is judged more than once")]
    DuplicatePair(DisorderId, DisorderId),
    #[error("disorder `{0}` cannot be compared with itself")]
    SelfPair(DisorderId),
    #[error("unknown order property `{0}`")]
    UnknownProperty(String),
    #[error("relation is not a linear order (classified as {0})")]
    NotLinear(OrderClass),
    #[error("relation is not a weak order (classified as {0})")]
    NotWeak(OrderClass),
    #[error("relation is not a semiorder (classified as {0})")]
    NotSemiorder(OrderClass),
}

/// Ranks a relation by its most specific class.
///
/// Returns `None` for unclassified relations; callers can inspect the
/// attached axiom reports to find the offending judgments.
pub fn rank(rel: &StrictRelation) -> (Classification, Option<Ranking>) {
    let c = analyze(rel);
    let ranking = match c.class {
        OrderClass::Linear => rank_linear(rel).ok(),
        OrderClass::Weak => rank_weak(rel).ok(),
        OrderClass::Semiorder => enumerate_semiorder_chains(rel).ok(),
        OrderClass::Unclassified => None,
    };
    (c, ranking)
}
