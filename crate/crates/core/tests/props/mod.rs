//! Randomized properties of the engine. Each runs on a deterministic RNG so
//! failures reproduce exactly; the `properties` test target and the
//! acceptance runner share this module.

#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use csa_core::disorder::{Disorder, DisorderSet};
use csa_core::order::{
    analyze, check_axiom, derive_indifference, enumerate_semiorder_chains, rank_linear, rank_weak, Axiom, OrderClass,
    PairJudgment, Ranking, StrictRelation, Verdict,
};
use csa_core::pipeline::{to_json, ScaleInput};
use csa_core::store::{Mutation, Session, SessionStore, StoreError};
use csa_core::trisection::{
    esv, percentile_thresholds, statistical_thresholds, topo_rank, trisect, trisect_with, TrisectionError,
    TrisectionParams,
};
use csa_core::weighting::{
    consistency, principal_eigen, weigh_hierarchy, Cluster, ComparisonMatrix, Entry, Hierarchy, WeightVector,
};

pub const CASES: u32 = 256;

pub struct Property {
    pub name: &'static str,
    pub run: fn(u32) -> Result<(), String>,
}

pub const ALL: &[Property] = &[
    Property {
        name: "eigen recovery of consistent matrices",
        run: eigen_recovery,
    },
    Property {
        name: "lambda_max >= n for Saaty matrices",
        run: lambda_at_least_n,
    },
    Property {
        name: "eigenvector permutation invariance",
        run: permutation_invariance,
    },
    Property {
        name: "hierarchy global weights sum to 1",
        run: hierarchy_sums_to_one,
    },
    Property {
        name: "class lattice containment",
        run: class_lattice,
    },
    Property {
        name: "trichotomy partition of pairs",
        run: trichotomy,
    },
    Property {
        name: "counterexamples violate their axiom",
        run: counterexamples_recheck,
    },
    Property {
        name: "rank_linear permutation round trip",
        run: linear_round_trip,
    },
    Property {
        name: "weak order blocks are indifference classes",
        run: weak_blocks,
    },
    Property {
        name: "semiorder chains match brute force",
        run: semiorder_chains_brute_force,
    },
    Property {
        name: "trisection partition law",
        run: trisection_partition,
    },
    Property {
        name: "trisection k1/k2 monotonicity",
        run: trisection_monotone,
    },
    Property {
        name: "thresholds satisfy h >= l",
        run: thresholds_ordered,
    },
    Property {
        name: "ESV bounds and sum",
        run: esv_bounds,
    },
    Property {
        name: "topo_rank linear-extension validity",
        run: topo_linear_extension,
    },
    Property {
        name: "topo_rank equals rank_linear",
        run: topo_matches_linear,
    },
    Property {
        name: "topo_rank cycle witness",
        run: topo_cycle_witness,
    },
    Property {
        name: "session store round-trip identity",
        run: store_round_trip,
    },
    Property {
        name: "rejected mutations leave the document",
        run: store_rejections,
    },
];

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn check<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

const SAATY: [(u64, u64); 17] = [
    (1, 1),
    (2, 1),
    (3, 1),
    (4, 1),
    (5, 1),
    (6, 1),
    (7, 1),
    (8, 1),
    (9, 1),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 6),
    (1, 7),
    (1, 8),
    (1, 9),
];

#[allow(clippy::needless_range_loop)]
fn saaty_matrix(min: usize, max: usize) -> impl Strategy<Value = ComparisonMatrix> {
    (min..=max).prop_flat_map(|n| {
        prop::collection::vec(0..SAATY.len(), n * (n - 1) / 2).prop_map(move |picks| {
            let mut rows = vec![vec![Entry::Fraction { num: 1, den: 1 }; n]; n];
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    let (a, b) = SAATY[picks[k]];
                    rows[i][j] = Entry::Fraction { num: a, den: b };
                    rows[j][i] = Entry::Fraction { num: b, den: a };
                    k += 1;
                }
            }
            ComparisonMatrix::new(labels(n), rows).unwrap()
        })
    })
}

fn normalized(w: &[f64]) -> Vec<f64> {
    let s: f64 = w.iter().sum();
    w.iter().map(|x| x / s).collect()
}

fn positive_weights(max: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05f64..20.0, 1..=max).prop_map(|w| normalized(&w))
}

pub fn eigen_recovery(cases: u32) -> Result<(), String> {
    check(cases, positive_weights(9), |w| {
        let n = w.len();
        let m = ComparisonMatrix::from_weights(labels(n), &w).unwrap();
        let e = principal_eigen(&m).map_err(|e| TestCaseError::fail(e.to_string()))?;
        for (got, want) in e.weights.values().zip(&w) {
            prop_assert!((got - want).abs() < 1e-6, "weight {got} vs {want}");
        }
        prop_assert!((e.lambda_max - n as f64).abs() < 1e-6);
        prop_assert!(consistency(&m, &e).consistency_ratio.abs() < 1e-6);
        Ok(())
    })
}

pub fn lambda_at_least_n(cases: u32) -> Result<(), String> {
    check(cases, saaty_matrix(1, 9), |m| {
        let e = principal_eigen(&m).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(e.converged);
        prop_assert!(e.lambda_max >= m.order() as f64 - 1e-9, "λ = {}", e.lambda_max);
        prop_assert!((e.weights.sum() - 1.0).abs() < 1e-9);
        Ok(())
    })
}

pub fn permutation_invariance(cases: u32) -> Result<(), String> {
    let s = saaty_matrix(2, 9).prop_flat_map(|m| {
        let perm = Just((0..m.order()).collect::<Vec<_>>()).prop_shuffle();
        (Just(m), perm)
    });
    check(cases, s, |(m, perm)| {
        let a = principal_eigen(&m).unwrap();
        let b = principal_eigen(&m.permuted(&perm)).unwrap();
        for (k, &p) in perm.iter().enumerate() {
            let label = &m.labels()[p];
            prop_assert_eq!(b.weights.ids().nth(k), Some(label.as_str()));
            let (x, y) = (a.weights.get(label).unwrap(), b.weights.get(label).unwrap());
            prop_assert!((x - y).abs() < 1e-9, "{label}: {x} vs {y}");
        }
        prop_assert!((a.lambda_max - b.lambda_max).abs() < 1e-9);
        Ok(())
    })
}

pub fn hierarchy_sums_to_one(cases: u32) -> Result<(), String> {
    let s = prop::collection::vec(positive_weights(5), 1..=5).prop_flat_map(|locals| {
        let k = locals.len();
        (Just(locals), prop::collection::vec(0.05f64..20.0, k))
    });
    check(cases, s, |(locals, top)| {
        let mut clusters = Vec::new();
        for (c, w) in locals.iter().enumerate() {
            let members: Vec<String> = (0..w.len()).map(|i| format!("c{c}m{i}")).collect();
            clusters.push(Cluster {
                id: format!("c{c}"),
                matrix: Some(ComparisonMatrix::from_weights(members.clone(), w).unwrap()),
                members,
            });
        }
        let cluster_matrix = ComparisonMatrix::from_weights(clusters.iter().map(|c| c.id.clone()), &top).unwrap();
        let hw = weigh_hierarchy(&Hierarchy {
            clusters,
            cluster_matrix,
        })
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!((hw.global.sum() - 1.0).abs() < 1e-9);
        let top = normalized(&top);
        for (c, w) in locals.iter().enumerate() {
            for (i, wi) in w.iter().enumerate() {
                let g = hw.global.get(&format!("c{c}m{i}")).unwrap();
                prop_assert!((g - top[c] * wi).abs() < 1e-6);
            }
        }
        Ok(())
    })
}

fn relation(n: usize, prefers: impl Fn(usize, usize) -> bool) -> StrictRelation {
    let names = labels(n);
    let u = DisorderSet::from_ids(&names).unwrap();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && prefers(i, j) {
                pairs.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    StrictRelation::from_pairs(u, pairs).unwrap()
}

/// Any irreflexive relation, cycles and symmetric pairs included.
fn arbitrary_relation(max: usize) -> impl Strategy<Value = StrictRelation> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::weighted(0.35), n * n).prop_map(move |g| relation(n, |i, j| g[i * n + j]))
    })
}

/// Each unordered pair: unrelated, one way or the other.
fn asymmetric_relation(max: usize) -> impl Strategy<Value = StrictRelation> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(0u8..3, n * n).prop_map(move |g| {
            relation(n, |i, j| {
                let (a, b) = (i.min(j), i.max(j));
                match g[a * n + b] {
                    1 => i < j,
                    2 => i > j,
                    _ => false,
                }
            })
        })
    })
}

fn weak_order(max: usize) -> impl Strategy<Value = (Vec<u8>, StrictRelation)> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(0u8..4, n).prop_map(move |lv| {
            let rel = relation(n, |i, j| lv[i] < lv[j]);
            (lv, rel)
        })
    })
}

/// Unit-interval semiorder: `x > y` iff `v(x) > v(y) + 2`.
fn semiorder(max: usize) -> impl Strategy<Value = StrictRelation> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(0u8..9, n).prop_map(move |v| relation(n, |i, j| v[i] > v[j] + 2)))
}

fn permutation(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

/// Position `k` of `perm` is the `k`-th most preferred element.
fn linear_from(perm: &[usize]) -> StrictRelation {
    let mut pos = vec![0; perm.len()];
    for (k, &e) in perm.iter().enumerate() {
        pos[e] = k;
    }
    relation(perm.len(), |i, j| pos[i] < pos[j])
}

fn mixed_relation(max: usize) -> impl Strategy<Value = StrictRelation> {
    prop_oneof![
        arbitrary_relation(max),
        asymmetric_relation(max),
        weak_order(max).prop_map(|(_, r)| r),
        semiorder(max),
        permutation(max).prop_map(|p| linear_from(&p)),
    ]
}

pub fn class_lattice(cases: u32) -> Result<(), String> {
    check(cases, mixed_relation(6), |rel| {
        let c = analyze(&rel);
        let weak_axioms = c.holds(Axiom::Asymmetric) && c.holds(Axiom::NegativeTransitive);
        let semi_axioms = c.holds(Axiom::Asymmetric) && c.holds(Axiom::Ferrers) && c.holds(Axiom::Semitransitive);
        if c.is_linear() {
            prop_assert!(weak_axioms);
        }
        if weak_axioms {
            prop_assert!(semi_axioms);
        }
        let expected = if c.is_linear() {
            OrderClass::Linear
        } else if weak_axioms {
            OrderClass::Weak
        } else if semi_axioms {
            OrderClass::Semiorder
        } else {
            OrderClass::Unclassified
        };
        prop_assert_eq!(c.class, expected);
        Ok(())
    })
}

pub fn trichotomy(cases: u32) -> Result<(), String> {
    let s = prop_oneof![asymmetric_relation(7), weak_order(7).prop_map(|(_, r)| r), semiorder(7)];
    check(cases, s, |rel| {
        prop_assert!(check_axiom(&rel, Axiom::Asymmetric).holds);
        let ind = derive_indifference(&rel);
        let u = rel.universe();
        for i in 0..rel.len() {
            for j in i + 1..rel.len() {
                let held = [
                    rel.prefers(i, j),
                    rel.prefers(j, i),
                    ind.contains(u.id(i).as_str(), u.id(j).as_str()),
                ];
                prop_assert_eq!(held.iter().filter(|&&b| b).count(), 1);
            }
        }
        Ok(())
    })
}

pub fn counterexamples_recheck(cases: u32) -> Result<(), String> {
    check(cases, mixed_relation(6), |rel| {
        for &ax in Axiom::ALL.iter() {
            let r = check_axiom(&rel, ax);
            prop_assert_eq!(r.holds, r.violations == 0);
            prop_assert!(r.counterexamples.len() <= 20);
            prop_assert_eq!(r.counterexamples.len(), r.violations.min(20));
            for ids in &r.counterexamples {
                let tuple: Vec<usize> = ids
                    .iter()
                    .map(|d| rel.universe().position(d.as_str()).unwrap())
                    .collect();
                prop_assert_eq!(tuple.len(), ax.arity());
                prop_assert!(ax.violated_by(&rel, &tuple), "{:?} does not violate {}", ids, ax.name());
            }
        }
        Ok(())
    })
}

pub fn linear_round_trip(cases: u32) -> Result<(), String> {
    check(cases, permutation(7), |perm| {
        let rel = linear_from(&perm);
        let Ranking::Chain { chain } = rank_linear(&rel).unwrap() else {
            return Err(TestCaseError::fail("not a chain"));
        };
        let got: Vec<usize> = chain
            .iter()
            .map(|d| rel.universe().position(d.as_str()).unwrap())
            .collect();
        prop_assert_eq!(got, perm);
        Ok(())
    })
}

pub fn weak_blocks(cases: u32) -> Result<(), String> {
    check(cases, weak_order(7), |(lv, rel)| {
        let Ranking::RankedPartition { blocks } = rank_weak(&rel).unwrap() else {
            return Err(TestCaseError::fail("not a partition"));
        };
        let distinct: BTreeSet<u8> = lv.iter().copied().collect();
        prop_assert_eq!(blocks.len(), distinct.len());
        for (block, level) in blocks.iter().zip(&distinct) {
            let want: Vec<String> = (0..lv.len())
                .filter(|&i| lv[i] == *level)
                .map(|i| format!("x{i}"))
                .collect();
            let got: Vec<String> = block.iter().map(|d| d.to_string()).collect();
            prop_assert_eq!(got, want);
        }
        // indifference of a weak order is transitive
        let n = rel.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a != c && rel.indifferent(a, b) && rel.indifferent(b, c) {
                        prop_assert!(rel.indifferent(a, c));
                    }
                }
            }
        }
        Ok(())
    })
}

fn brute_force_chains(rel: &StrictRelation) -> Vec<Vec<usize>> {
    fn valid(rel: &StrictRelation, s: &[usize]) -> bool {
        let tie: Vec<bool> = s.windows(2).map(|w| rel.indifferent(w[0], w[1])).collect();
        s.windows(2)
            .all(|w| rel.prefers(w[0], w[1]) || rel.indifferent(w[0], w[1]))
            && !tie.windows(2).any(|t| t[0] && t[1])
            && (0..s.len()).all(|i| (i + 2..s.len()).all(|j| rel.prefers(s[i], s[j])))
    }
    fn all_sequences(n: usize, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !seq.is_empty() {
            out.push(seq.clone());
        }
        for e in 0..n {
            if !seq.contains(&e) {
                seq.push(e);
                all_sequences(n, seq, out);
                seq.pop();
            }
        }
    }
    let mut seqs = Vec::new();
    all_sequences(rel.len(), &mut Vec::new(), &mut seqs);
    let valid: Vec<Vec<usize>> = seqs.into_iter().filter(|s| valid(rel, s)).collect();
    let sets: Vec<BTreeSet<usize>> = valid.iter().map(|s| s.iter().copied().collect()).collect();
    let mut best: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = Default::default();
    for (s, set) in valid.iter().zip(&sets) {
        if sets.iter().any(|t| t.len() > set.len() && t.is_superset(set)) {
            continue;
        }
        let key: Vec<usize> = set.iter().copied().collect();
        let slot = best.entry(key).or_insert_with(|| s.clone());
        if s < slot {
            *slot = s.clone();
        }
    }
    let mut out: Vec<Vec<usize>> = best.into_values().collect();
    out.sort();
    out
}

pub fn semiorder_chains_brute_force(cases: u32) -> Result<(), String> {
    check(cases, semiorder(6), |rel| {
        let Ranking::ChainSet { chains } = enumerate_semiorder_chains(&rel).unwrap() else {
            return Err(TestCaseError::fail("not a chain set"));
        };
        for c in &chains {
            prop_assert!(c.is_valid_for(&rel), "{}", c);
        }
        let got: Vec<Vec<usize>> = chains
            .iter()
            .map(|c| {
                c.elements
                    .iter()
                    .map(|d| rel.universe().position(d.as_str()).unwrap())
                    .collect()
            })
            .collect();
        prop_assert_eq!(got, brute_force_chains(&rel));
        Ok(())
    })
}

fn value_map(max: usize) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(prop_oneof![0.0f64..1.0, (0u8..5).prop_map(|k| k as f64 / 4.0)], 1..=max)
        .prop_map(|v| WeightVector::from_pairs(v.into_iter().enumerate().map(|(i, x)| (format!("x{i}"), x))))
}

fn params() -> impl Strategy<Value = TrisectionParams> {
    prop_oneof![
        (0.0f64..3.0, 0.0f64..3.0).prop_map(|(k1, k2)| TrisectionParams::Statistical { k1, k2 }),
        (1.0f64..99.0, 0.0f64..1.0).prop_map(|(a, f)| TrisectionParams::Percentile {
            alpha: a,
            beta: (a * f).max(a * 1e-3),
        }),
    ]
}

fn partitions(values: &WeightVector, high: &[String], medium: &[String], low: &[String]) -> bool {
    let mut all: Vec<&str> = high.iter().chain(medium).chain(low).map(String::as_str).collect();
    all.sort();
    let mut ids: Vec<&str> = values.ids().collect();
    ids.sort();
    all == ids
}

pub fn trisection_partition(cases: u32) -> Result<(), String> {
    let manual = (value_map(12), 0.0f64..1.0, 0.0f64..1.0).prop_map(|(v, a, b)| (v, a.max(b), a.min(b)));
    check(cases, (manual, params()), |((v, h, l), p)| {
        let t = trisect(&v, h, l).unwrap();
        prop_assert!(partitions(&v, &t.high, &t.medium, &t.low));
        for id in &t.high {
            prop_assert!(v.get(id).unwrap() >= h);
        }
        for id in &t.medium {
            let x = v.get(id).unwrap();
            prop_assert!(l < x && x < h);
        }
        let t = trisect_with(&v, &p).unwrap();
        prop_assert!(partitions(&v, &t.high, &t.medium, &t.low));
        Ok(())
    })
}

pub fn trisection_monotone(cases: u32) -> Result<(), String> {
    let s = (value_map(12), 0.0f64..3.0, 0.0f64..3.0, 0.0f64..2.0, 0.0f64..2.0);
    check(cases, s, |(v, k1, k2, d1, d2)| {
        let at = |k1, k2| trisect_with(&v, &TrisectionParams::Statistical { k1, k2 }).unwrap();
        let base = at(k1, k2);
        let up1 = at(k1 + d1, k2);
        let up2 = at(k1, k2 + d2);
        let subset = |a: &[String], b: &[String]| a.iter().all(|x| b.contains(x));
        prop_assert!(subset(&up1.high, &base.high));
        prop_assert!(subset(&up2.low, &base.low));
        Ok(())
    })
}

pub fn thresholds_ordered(cases: u32) -> Result<(), String> {
    check(cases, (value_map(15), params()), |(v, p)| {
        let vals: Vec<f64> = v.values().collect();
        let (h, l) = match p {
            TrisectionParams::Percentile { alpha, beta } => percentile_thresholds(&vals, alpha, beta).unwrap(),
            TrisectionParams::Statistical { k1, k2 } => {
                let t = statistical_thresholds(&vals, k1, k2).unwrap();
                (t.h, t.l)
            }
        };
        prop_assert!(h >= l, "h = {h}, l = {l}");
        Ok(())
    })
}

pub fn esv_bounds(cases: u32) -> Result<(), String> {
    check(cases, mixed_relation(8), |rel| {
        let n = rel.len() as f64;
        let e = esv(&rel);
        for x in e.values.values() {
            prop_assert!((0.0..=(n - 1.0) / n + 1e-12).contains(&x));
        }
        prop_assert!((e.values.sum() * n - rel.pair_count() as f64).abs() < 1e-9);
        prop_assert!(e.descending.windows(2).all(|w| w[0].value >= w[1].value));
        Ok(())
    })
}

/// Random DAG: edges only point forward in a hidden order.
fn acyclic_relation(max: usize) -> impl Strategy<Value = StrictRelation> {
    permutation(max).prop_flat_map(|perm| {
        let n = perm.len();
        prop::collection::vec(prop::bool::weighted(0.4), n * n).prop_map(move |g| {
            let mut pos = vec![0; n];
            for (k, &e) in perm.iter().enumerate() {
                pos[e] = k;
            }
            relation(n, |i, j| pos[i] < pos[j] && g[i * n + j])
        })
    })
}

pub fn topo_linear_extension(cases: u32) -> Result<(), String> {
    check(cases, acyclic_relation(9), |rel| {
        let order = topo_rank(&rel).unwrap();
        let pos: Vec<usize> = order
            .iter()
            .map(|d| rel.universe().position(d.as_str()).unwrap())
            .collect();
        prop_assert_eq!(pos.iter().copied().collect::<BTreeSet<_>>().len(), rel.len());
        for a in 0..pos.len() {
            for b in a + 1..pos.len() {
                prop_assert!(!rel.prefers(pos[b], pos[a]));
            }
        }
        Ok(())
    })
}

pub fn topo_matches_linear(cases: u32) -> Result<(), String> {
    check(cases, permutation(9), |perm| {
        let rel = linear_from(&perm);
        let Ranking::Chain { chain } = rank_linear(&rel).unwrap() else {
            return Err(TestCaseError::fail("not a chain"));
        };
        prop_assert_eq!(topo_rank(&rel).unwrap(), chain);
        Ok(())
    })
}

pub fn topo_cycle_witness(cases: u32) -> Result<(), String> {
    check(cases, arbitrary_relation(7), |rel| match topo_rank(&rel) {
        Ok(order) => {
            prop_assert_eq!(order.len(), rel.len());
            Ok(())
        }
        Err(TrisectionError::CycleDetected(cycle)) => {
            prop_assert!(cycle.len() >= 2);
            for k in 0..cycle.len() {
                let next = &cycle[(k + 1) % cycle.len()];
                prop_assert!(rel.prefers_id(cycle[k].as_str(), next.as_str()));
            }
            Ok(())
        }
        Err(e) => Err(TestCaseError::fail(e.to_string())),
    })
}

#[derive(Debug, Clone)]
struct SessionPlan {
    disorders: Vec<Disorder>,
    judgments: Vec<PairJudgment>,
    hierarchy: Option<Hierarchy>,
    scale: Option<ScaleInput>,
    params: Option<TrisectionParams>,
    notes: String,
}

fn session_plan() -> impl Strategy<Value = SessionPlan> {
    (2usize..=6).prop_flat_map(|n| {
        let ids: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let disorders = prop::collection::vec("[A-Za-z ]{0,12}", n).prop_map({
            let ids = ids.clone();
            move |names| {
                ids.iter()
                    .zip(names)
                    .map(|(id, label)| Disorder {
                        id: id.as_str().into(),
                        label: if label.is_empty() { id.clone() } else { label },
                    })
                    .collect::<Vec<_>>()
            }
        });
        let judgments = prop::collection::vec((0u8..4, any::<bool>()), n * (n - 1) / 2).prop_map({
            let ids = ids.clone();
            move |picks| {
                let mut out = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        let (v, swap) = picks[k];
                        k += 1;
                        let verdict = match v {
                            0 => continue,
                            1 => Verdict::Preferred,
                            2 => Verdict::LessPreferred,
                            _ => Verdict::Indifferent,
                        };
                        let (a, b) = if swap { (&ids[j], &ids[i]) } else { (&ids[i], &ids[j]) };
                        out.push(PairJudgment::new(a.as_str(), b.as_str(), verdict));
                    }
                }
                out
            }
        });
        let hierarchy = prop::option::of(prop::collection::vec(0.05f64..20.0, n)).prop_map({
            let ids = ids.clone();
            move |w| w.map(|w| Hierarchy::flat(ComparisonMatrix::from_weights(ids.clone(), &w).unwrap()))
        });
        let scale = prop::option::of((
            prop::collection::vec(0.05f64..20.0, 3),
            prop::collection::vec(prop::option::of(0usize..3), n),
        ))
        .prop_map({
            let ids = ids.clone();
            move |s| {
                s.map(|(w, picks)| {
                    let levels: Vec<String> = ["A", "B", "C"].map(String::from).to_vec();
                    ScaleInput {
                        matrix: ComparisonMatrix::from_weights(levels.clone(), &w).unwrap(),
                        assignment: ids
                            .iter()
                            .zip(picks)
                            .filter_map(|(id, p)| p.map(|p| (id.clone(), levels[p].clone())))
                            .collect(),
                        levels,
                    }
                })
            }
        });
        (
            disorders,
            judgments,
            hierarchy,
            scale,
            prop::option::of(params()),
            "\\PC{0,24}",
        )
            .prop_map(|(disorders, judgments, hierarchy, scale, params, notes)| SessionPlan {
                disorders,
                judgments,
                hierarchy,
                scale,
                params,
                notes,
            })
    })
}

fn fail(e: StoreError) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

pub fn store_round_trip(cases: u32) -> Result<(), String> {
    check(cases, session_plan(), |plan| {
        let dir = tempfile::tempdir().unwrap();
        let store = SessionStore::open(dir.path()).map_err(fail)?;
        let s = store.create(plan.disorders, "").map_err(fail)?;
        let id = s.id.clone();
        let mutations = [
            Mutation::SetJudgments(plan.judgments),
            Mutation::SetHierarchy(plan.hierarchy),
            Mutation::SetScale(plan.scale),
            Mutation::SetTrisectionParams(plan.params),
            Mutation::SetNotes(plan.notes),
        ];
        let mut last = s;
        for m in mutations {
            last = store.update(&id, last.revision, m).map_err(fail)?;
        }
        prop_assert_eq!(last.revision, 6);
        let loaded = store.load(&id).map_err(fail)?;
        prop_assert_eq!(&loaded, &last);
        let text = to_json(&loaded);
        let reparsed: Session = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&reparsed, &loaded);
        prop_assert_eq!(to_json(&reparsed), text);
        Ok(())
    })
}

pub fn store_rejections(cases: u32) -> Result<(), String> {
    check(cases, (session_plan(), 2u64..50), |(plan, stale)| {
        let dir = tempfile::tempdir().unwrap();
        let store = SessionStore::open(dir.path()).map_err(fail)?;
        let s = store.create(plan.disorders, "").map_err(fail)?;
        let s = store
            .update(&s.id, 1, Mutation::SetJudgments(plan.judgments.clone()))
            .map_err(fail)?;
        let path = store.sessions_dir().join(format!("{}.json", s.id));
        let before = std::fs::read(&path).unwrap();

        let conflict = store.update(&s.id, stale + 2, Mutation::SetNotes("x".into()));
        let conflicted = matches!(conflict, Err(StoreError::RevisionConflict { actual: 2, .. }));
        prop_assert!(conflicted);
        let bad = PairJudgment::preferred("p0", "missing");
        let invalid = store.update(&s.id, 2, Mutation::PutJudgment(bad));
        prop_assert!(matches!(invalid, Err(StoreError::Validation(_))));
        prop_assert_eq!(std::fs::read(&path).unwrap(), before);
        prop_assert_eq!(store.load(&s.id).map_err(fail)?, s);
        Ok(())
    })
}
