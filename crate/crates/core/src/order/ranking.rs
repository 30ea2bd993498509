use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{analyze, OrderClass, OrderError, StrictRelation};
use crate::disorder::DisorderId;

/// Marker between two adjacent elements of a [`PresentationChain`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Link {
    /// `a > b`
    Strict,
    /// `a ∼ b`
    Tie,
}

/// One displayable chain of a semiorder, e.g. `d1 > d2 ∼ d3 > d5`.
///
/// Invariants: no two consecutive ties; every non-adjacent pair is strictly
/// ordered; each link agrees with the source relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PresentationChain {
    pub elements: Vec<DisorderId>,
    pub links: Vec<Link>,
}

impl fmt::Display for PresentationChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(match self.links[i - 1] {
                    Link::Strict => " > ",
                    Link::Tie => " ∼ ",
                })?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Ranking {
    /// A full chain, best first.
    Chain { chain: Vec<DisorderId> },
    /// Ordered blocks of mutually indifferent disorders; a block with two or
    /// more members is a comorbidity group.
    RankedPartition { blocks: Vec<Vec<DisorderId>> },
    /// Several overlapping chains, for relations with intransitive indifference.
    ChainSet { chains: Vec<PresentationChain> },
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ranking::Chain { chain } => {
                let parts: Vec<_> = chain.iter().map(DisorderId::as_str).collect();
                f.write_str(&parts.join(" > "))
            }
            Ranking::RankedPartition { blocks } => {
                let parts: Vec<_> = blocks
                    .iter()
                    .map(|b| b.iter().map(DisorderId::as_str).collect::<Vec<_>>().join(" ∼ "))
                    .collect();
                f.write_str(&parts.join(" > "))
            }
            Ranking::ChainSet { chains } => {
                for (i, c) in chains.iter().enumerate() {
                    if i > 0 {
                        f.write_str("\n")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

/// The unique chain of a linear order.
pub fn rank_linear(rel: &StrictRelation) -> Result<Ranking, OrderError> {
    let class = analyze(rel).class;
    if class != OrderClass::Linear {
        return Err(OrderError::NotLinear(class));
    }
    // In a linear order the element at chain position k dominates n-1-k others.
    let n = rel.len();
    let mut chain = vec![None; n];
    for x in 0..n {
        chain[n - 1 - rel.dominated_count(x)] = Some(rel.universe().id(x).clone());
    }
    Ok(Ranking::Chain {
        chain: chain
            .into_iter()
            .map(|c| c.expect("linear order fills every slot"))
            .collect(),
    })
}

/// Equivalence classes of indifference, best block first.
pub fn rank_weak(rel: &StrictRelation) -> Result<Ranking, OrderError> {
    let class = analyze(rel).class;
    if !matches!(class, OrderClass::Linear | OrderClass::Weak) {
        return Err(OrderError::NotWeak(class));
    }
    let n = rel.len();
    let mut assigned = vec![false; n];
    let mut blocks: Vec<(usize, Vec<usize>)> = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let block: Vec<usize> = (x..n).filter(|&y| !assigned[y] && rel.indifferent(x, y)).collect();
        for &y in &block {
            assigned[y] = true;
        }
        blocks.push((rel.dominated_count(x), block));
    }
    // stable: equal scores cannot occur between distinct blocks of a weak order
    blocks.sort_by_key(|b| std::cmp::Reverse(b.0));
    Ok(Ranking::RankedPartition {
        blocks: blocks
            .into_iter()
            .map(|(_, b)| b.into_iter().map(|i| rel.universe().id(i).clone()).collect())
            .collect(),
    })
}

/// All maximal presentation chains of a semiorder.
///
/// A chain is a sequence of distinct elements whose adjacent links are strict
/// or tied, with no two ties in a row, and whose non-adjacent pairs are all
/// strictly ordered. Chains are maximal by element-set inclusion. When one
/// element set admits several sequences (swapping the two sides of a tie), the
/// sequence that is lexicographically first by universe position is kept.
/// Output is sorted lexicographically by universe position.
///
/// Linear and weak orders satisfy the semiorder axioms and are accepted too.
pub fn enumerate_semiorder_chains(rel: &StrictRelation) -> Result<Ranking, OrderError> {
    let c = analyze(rel);
    if !c.is_semiorder() {
        return Err(OrderError::NotSemiorder(c.class));
    }
    let n = rel.len();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut seq = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for start in 0..n {
        seq.push(start);
        used[start] = true;
        extend(rel, &mut seq, &mut used, false, &mut found);
        used[start] = false;
        seq.pop();
    }

    let sets: Vec<BTreeSet<usize>> = found.iter().map(|s| s.iter().copied().collect()).collect();
    let mut maximal: Vec<(BTreeSet<usize>, Vec<usize>)> = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        let dominated = sets.iter().any(|t| t.len() > s.len() && t.is_superset(s));
        if dominated {
            continue;
        }
        match maximal.iter_mut().find(|(set, _)| set == s) {
            Some((_, best)) if found[i] < *best => *best = found[i].clone(),
            Some(_) => {}
            None => maximal.push((s.clone(), found[i].clone())),
        }
    }
    let mut chains: Vec<Vec<usize>> = maximal.into_iter().map(|(_, s)| s).collect();
    chains.sort();

    let u = rel.universe();
    Ok(Ranking::ChainSet {
        chains: chains
            .into_iter()
            .map(|s| {
                let links = s
                    .windows(2)
                    .map(|w| {
                        if rel.prefers(w[0], w[1]) {
                            Link::Strict
                        } else {
                            Link::Tie
                        }
                    })
                    .collect();
                PresentationChain {
                    elements: s.into_iter().map(|i| u.id(i).clone()).collect(),
                    links,
                }
            })
            .collect(),
    })
}

/// Depth-first extension of `seq`; records every sequence that cannot be
/// extended further (non-extendable sequences are a superset of the maximal
/// ones, which the caller filters).
fn extend(
    rel: &StrictRelation,
    seq: &mut Vec<usize>,
    used: &mut [bool],
    last_was_tie: bool,
    out: &mut Vec<Vec<usize>>,
) {
    let last = *seq.last().expect("non-empty");
    let mut extended = false;
    for next in 0..rel.len() {
        if used[next] {
            continue;
        }
        let tie = if rel.prefers(last, next) {
            false
        } else if rel.indifferent(last, next) && !last_was_tie {
            true
        } else {
            continue;
        };
        if !seq[..seq.len() - 1].iter().all(|&e| rel.prefers(e, next)) {
            continue;
        }
        extended = true;
        seq.push(next);
        used[next] = true;
        extend(rel, seq, used, tie, out);
        used[next] = false;
        seq.pop();
    }
    if !extended {
        out.push(seq.clone());
    }
}

impl PresentationChain {
    /// Checks the chain invariants against `rel`.
    pub fn is_valid_for(&self, rel: &StrictRelation) -> bool {
        let u = rel.universe();
        let Some(pos) = self
            .elements
            .iter()
            .map(|e| u.position(e.as_str()))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        if self.links.len() + 1 != pos.len() {
            return false;
        }
        let distinct: BTreeSet<_> = pos.iter().collect();
        if distinct.len() != pos.len() {
            return false;
        }
        if self.links.windows(2).any(|w| w == [Link::Tie, Link::Tie]) {
            return false;
        }
        for (k, link) in self.links.iter().enumerate() {
            let ok = match link {
                Link::Strict => rel.prefers(pos[k], pos[k + 1]),
                Link::Tie => rel.indifferent(pos[k], pos[k + 1]),
            };
            if !ok {
                return false;
            }
        }
        (0..pos.len()).all(|i| (i + 2..pos.len()).all(|j| rel.prefers(pos[i], pos[j])))
    }
}
