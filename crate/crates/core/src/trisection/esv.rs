use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::TrisectionError;
use crate::disorder::DisorderId;
use crate::order::StrictRelation;
use crate::weighting::WeightVector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EsvEntry {
    pub id: DisorderId,
    /// Number of disorders this one is strictly preferred over.
    pub dominated: usize,
    pub value: f64,
}

/// Evaluation status values: the fraction of the universe each disorder
/// strictly dominates, `v(d) = |{x : d > x}| / n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EsvList {
    /// id → value, in universe order.
    pub values: WeightVector,
    /// Highest value first; equal values keep universe order.
    pub descending: Vec<EsvEntry>,
}

impl EsvList {
    pub fn get(&self, id: &str) -> Option<f64> {
        self.values.get(id)
    }
}

pub fn esv(rel: &StrictRelation) -> EsvList {
    let n = rel.len();
    let entries: Vec<EsvEntry> = (0..n)
        .map(|i| {
            let dominated = rel.dominated_count(i);
            EsvEntry {
                id: rel.universe().id(i).clone(),
                dominated,
                value: dominated as f64 / n as f64,
            }
        })
        .collect();
    let values = WeightVector::from_pairs(entries.iter().map(|e| (e.id.to_string(), e.value)));
    let mut descending = entries;
    // stable sort keeps universe order among equal counts
    descending.sort_by_key(|e| std::cmp::Reverse(e.dominated));
    EsvList { values, descending }
}

/// Kahn's algorithm over `>`: a disorder is listed only after every disorder
/// preferred to it. Among available disorders the earliest in universe
/// order goes first.
pub fn topo_rank(rel: &StrictRelation) -> Result<Vec<DisorderId>, TrisectionError> {
    let n = rel.len();
    let mut indegree: Vec<usize> = (0..n).map(|y| (0..n).filter(|&x| rel.prefers(x, y)).count()).collect();
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some(x) = ready.pop_first() {
        done[x] = true;
        order.push(rel.universe().id(x).clone());
        for (y, d) in indegree.iter_mut().enumerate() {
            if rel.prefers(x, y) {
                *d -= 1;
                if *d == 0 {
                    ready.insert(y);
                }
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    Err(TrisectionError::CycleDetected(find_cycle(rel, &done)))
}

/// Every leftover node has a leftover predecessor, so walking predecessors
/// must revisit a node.
fn find_cycle(rel: &StrictRelation, done: &[bool]) -> Vec<DisorderId> {
    let n = rel.len();
    let start = (0..n).find(|&i| !done[i]).expect("some node is left");
    let mut path = vec![start];
    let mut at = start;
    loop {
        let pred = (0..n)
            .find(|&p| !done[p] && rel.prefers(p, at))
            .expect("leftover node has a leftover predecessor");
        if let Some(k) = path.iter().position(|&q| q == pred) {
            let mut cycle: Vec<usize> = path[k..].to_vec();
            // path runs against the edges; flip so each element is preferred to the next
            cycle.reverse();
            return cycle.into_iter().map(|i| rel.universe().id(i).clone()).collect();
        }
        path.push(pred);
        at = pred;
    }
}
