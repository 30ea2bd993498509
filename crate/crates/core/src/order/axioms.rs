use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{OrderError, StrictRelation};
use crate::disorder::DisorderId;

/// Maximum number of witnesses kept per [`AxiomReport`].
pub const COUNTEREXAMPLE_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Axiom {
    /// `x > y ⇒ ¬(y > x)`
    Asymmetric,
    /// `x > y ∧ y > z ⇒ x > z`
    Transitive,
    /// `x ≠ y ⇒ x > y ∨ y > x`
    WeaklyComplete,
    /// `¬(x > y) ∧ ¬(y > z) ⇒ ¬(x > z)`
    NegativeTransitive,
    /// `x > x′ ∧ y > y′ ⇒ x > y′ ∨ y > x′`
    Ferrers,
    /// `x > x′ ∧ x′ > x″ ⇒ x > y ∨ y > x″` for every `y`
    Semitransitive,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::Asymmetric,
        Axiom::Transitive,
        Axiom::WeaklyComplete,
        Axiom::NegativeTransitive,
        Axiom::Ferrers,
        Axiom::Semitransitive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Asymmetric => "ASYMMETRIC",
            Axiom::Transitive => "TRANSITIVE",
            Axiom::WeaklyComplete => "WEAKLY_COMPLETE",
            Axiom::NegativeTransitive => "NEGATIVE_TRANSITIVE",
            Axiom::Ferrers => "FERRERS",
            Axiom::Semitransitive => "SEMITRANSITIVE",
        }
    }

    /// Number of universe elements in one witness tuple.
    pub fn arity(self) -> usize {
        match self {
            Axiom::Asymmetric | Axiom::WeaklyComplete => 2,
            Axiom::Transitive | Axiom::NegativeTransitive => 3,
            Axiom::Ferrers | Axiom::Semitransitive => 4,
        }
    }

    /// Whether `tuple` (universe positions, length [`Axiom::arity`]) violates
    /// this axiom in `rel`.
    pub fn violated_by(self, rel: &StrictRelation, tuple: &[usize]) -> bool {
        let p = |a: usize, b: usize| rel.prefers(a, b);
        match *tuple {
            [x, y] if self == Axiom::Asymmetric => p(x, y) && p(y, x),
            [x, y] if self == Axiom::WeaklyComplete => x != y && !p(x, y) && !p(y, x),
            [x, y, z] if self == Axiom::Transitive => p(x, y) && p(y, z) && !p(x, z),
            [x, y, z] if self == Axiom::NegativeTransitive => !p(x, y) && !p(y, z) && p(x, z),
            [x, x1, y, y1] if self == Axiom::Ferrers => p(x, x1) && p(y, y1) && !p(x, y1) && !p(y, x1),
            [x, x1, x2, y] if self == Axiom::Semitransitive => p(x, x1) && p(x1, x2) && !p(x, y) && !p(y, x2),
            _ => false,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = OrderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace(['-', ' '], "_");
        Axiom::ALL
            .into_iter()
            .find(|a| a.name() == norm)
            .ok_or_else(|| OrderError::UnknownProperty(s.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub property: Axiom,
    pub holds: bool,
    /// Violating tuples in the order the axiom quantifies its variables,
    /// truncated at [`COUNTEREXAMPLE_CAP`].
    pub counterexamples: Vec<Vec<DisorderId>>,
    /// Total number of violating tuples found, before truncation.
    pub violations: usize,
}

/// Exhaustively checks one axiom over all tuples of the universe.
///
/// Tuples are visited lexicographically by universe position, so the reported
/// witnesses are deterministic. Asymmetry and weak completeness are checked
/// over unordered pairs only, so each offending pair is reported once.
pub fn check_axiom(rel: &StrictRelation, property: Axiom) -> AxiomReport {
    let n = rel.len();
    let mut counterexamples = Vec::new();
    let mut violations = 0usize;
    let mut record = |tuple: &[usize]| {
        violations += 1;
        if counterexamples.len() < COUNTEREXAMPLE_CAP {
            counterexamples.push(tuple.iter().map(|&i| rel.universe().id(i).clone()).collect());
        }
    };

    match property.arity() {
        2 => {
            for x in 0..n {
                for y in x + 1..n {
                    if property.violated_by(rel, &[x, y]) {
                        record(&[x, y]);
                    }
                }
            }
        }
        3 => {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if property.violated_by(rel, &[x, y, z]) {
                            record(&[x, y, z]);
                        }
                    }
                }
            }
        }
        _ => {
            for a in 0..n {
                for b in 0..n {
                    // both quaternary axioms need the first pair related
                    if !rel.prefers(a, b) {
                        continue;
                    }
                    for c in 0..n {
                        for d in 0..n {
                            if property.violated_by(rel, &[a, b, c, d]) {
                                record(&[a, b, c, d]);
                            }
                        }
                    }
                }
            }
        }
    }

    AxiomReport {
        property,
        holds: violations == 0,
        counterexamples,
        violations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OrderClass {
    Linear,
    Weak,
    Semiorder,
    Unclassified,
}

impl fmt::Display for OrderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderClass::Linear => "LINEAR",
            OrderClass::Weak => "WEAK",
            OrderClass::Semiorder => "SEMIORDER",
            OrderClass::Unclassified => "UNCLASSIFIED",
        })
    }
}

/// The most specific class together with every axiom report it was derived from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub class: OrderClass,
    pub axioms: Vec<AxiomReport>,
}

impl Classification {
    pub fn report(&self, property: Axiom) -> &AxiomReport {
        self.axioms
            .iter()
            .find(|r| r.property == property)
            .expect("classification carries every axiom")
    }

    pub fn holds(&self, property: Axiom) -> bool {
        self.report(property).holds
    }

    pub fn is_linear(&self) -> bool {
        self.holds(Axiom::Asymmetric) && self.holds(Axiom::Transitive) && self.holds(Axiom::WeaklyComplete)
    }

    pub fn is_weak(&self) -> bool {
        self.holds(Axiom::Asymmetric) && self.holds(Axiom::NegativeTransitive)
    }

    pub fn is_semiorder(&self) -> bool {
        self.holds(Axiom::Asymmetric) && self.holds(Axiom::Ferrers) && self.holds(Axiom::Semitransitive)
    }
}

pub fn analyze(rel: &StrictRelation) -> Classification {
    let axioms: Vec<_> = Axiom::ALL.iter().map(|&a| check_axiom(rel, a)).collect();
    let mut c = Classification {
        class: OrderClass::Unclassified,
        axioms,
    };
    c.class = if c.is_linear() {
        OrderClass::Linear
    } else if c.is_weak() {
        OrderClass::Weak
    } else if c.is_semiorder() {
        OrderClass::Semiorder
    } else {
        OrderClass::Unclassified
    };
    c
}

pub fn classify(rel: &StrictRelation) -> OrderClass {
    analyze(rel).class
}
