//! Grouping generator partitions by the isomorphism class of their base graph.

use std::collections::HashMap;

use serde::Serialize;

use super::{basegraph, block_weight, canonical_pairing, FractureError, GraphProperty};
use crate::graph::MultiGraph;
use crate::partitions::{bell, enumerate_partitions};

/// Largest m for which the class table is built by full enumeration.
pub const MAX_CLASS_TABLE_M: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    /// A base graph in this class.
    pub representative: MultiGraph,
    pub blocks: usize,
    /// Number of partitions sigma whose base graph lies in the class.
    pub count: u128,
    pub automorphisms: u128,
    /// 2^m m! / |Aut|
    pub formula_count: u128,
    pub has_property: bool,
    /// count * (-1)^{blocks-1} (blocks-1)! when the property holds, else 0.
    pub contribution: i128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    pub enumerated: u128,
    pub formula: u128,
}

fn labelled_count(m: usize) -> u128 {
    (1..=m as u128).product::<u128>() << m
}

/// Every base graph class for partitions of a 2m-set, with counts. Rows are
/// ordered by block count (descending), then count (descending).
pub fn all_basegraph_classes(phi: GraphProperty, m: usize) -> Result<Vec<ClassRow>, FractureError> {
    if m == 0 || m > MAX_CLASS_TABLE_M {
        return Err(FractureError::CapExceeded { needed: bell(2 * m), cap: bell(2 * MAX_CLASS_TABLE_M) });
    }
    let pairing = canonical_pairing(m);
    type Key = (usize, usize, Vec<(usize, usize)>);
    let mut buckets: HashMap<Key, Vec<(MultiGraph, u128)>> = HashMap::new();
    for sigma in enumerate_partitions(2 * m) {
        let b = basegraph(&sigma, &pairing)?;
        let bucket = buckets.entry(b.invariant()).or_default();
        match bucket.iter_mut().find(|(rep, _)| rep.is_isomorphic(&b)) {
            Some((_, c)) => *c += 1,
            None => bucket.push((b, 1)),
        }
    }
    let total = labelled_count(m);
    let mut rows: Vec<ClassRow> = buckets
        .into_values()
        .flatten()
        .map(|(rep, count)| {
            let automorphisms = rep.automorphism_count();
            let has_property = phi.holds_multigraph(&rep);
            let blocks = rep.n();
            ClassRow {
                blocks,
                count,
                automorphisms,
                formula_count: total / automorphisms,
                has_property,
                contribution: if has_property { count as i128 * block_weight(blocks) } else { 0 },
                representative: rep,
            }
        })
        .collect();
    rows.sort_by(|a, b| b.blocks.cmp(&a.blocks).then(b.count.cmp(&a.count)).then(a.representative.edges().cmp(b.representative.edges())));
    Ok(rows)
}

/// The classes whose base graph has the property; their contributions sum
/// to the fixed-point indicator.
pub fn basegraph_class_table(phi: GraphProperty, m: usize) -> Result<Vec<ClassRow>, FractureError> {
    let mut rows = all_basegraph_classes(phi, m)?;
    rows.retain(|r| r.has_property);
    Ok(rows)
}

/// Enumerated number of partitions of a 2m-set whose base graph is isomorphic
/// to `t`, next to 2^m m!/|Aut(t)|.
pub fn count_partitions_by_basegraph_class(t: &MultiGraph, m: usize) -> Result<ClassCount, FractureError> {
    if t.edge_count() != m {
        return Err(FractureError::Malformed(format!("class has {} edges, expected {m}", t.edge_count())));
    }
    let pairing = canonical_pairing(m);
    let key = t.invariant();
    let mut enumerated = 0u128;
    for sigma in enumerate_partitions(2 * m) {
        if sigma.num_blocks() != t.n() {
            continue;
        }
        let b = basegraph(&sigma, &pairing)?;
        if b.invariant() == key && b.is_isomorphic(t) {
            enumerated += 1;
        }
    }
    let formula = labelled_count(m) / t.automorphism_count();
    if enumerated != formula {
        return Err(FractureError::ClassCountMismatch { enumerated, formula });
    }
    Ok(ClassCount { enumerated, formula })
}
