//! Fractures, fractured graphs, base graphs of generator partitions and the
//! indicator sums built from them.
//!
//! A fracture splits every vertex according to a partition of its incident
//! edges. The indicator of a property weighs each fracture whose fractured
//! graph has the property by the product over vertices of
//! `(-1)^{b-1} (b-1)!`, b the number of blocks at that vertex.

mod classes;
mod property;
mod trees;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{Graph, MultiGraph};
use crate::groups::{CayleyGraph, FiniteGroup};
use crate::partitions::{bell, for_each_rgs, for_each_rgs_with_prefix, rgs_prefixes, SetPartition};

pub use crate::partitions::enumerate_partitions;
pub use classes::{all_basegraph_classes, basegraph_class_table, MAX_CLASS_TABLE_M, count_partitions_by_basegraph_class, ClassCount, ClassRow};
pub use property::GraphProperty;
pub use trees::{cayley_tree_identity_check, unlabelled_trees, TreeIdentity, MAX_TREE_VERTICES};

use property::EdgeScratch;

pub const DEFAULT_FRACTURE_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FractureError {
    #[error("fracture does not match the host graph: {0}")]
    Malformed(String),
    #[error("pairing is not a fixed-point-free involution on {0} elements")]
    BadPairing(usize),
    #[error("enumeration needs {needed} terms, above the cap of {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("class count mismatch: enumerated {enumerated}, formula {formula}")]
    ClassCountMismatch { enumerated: u128, formula: u128 },
    #[error("{0}")]
    Unsupported(String),
}

/// For every vertex, a partition of its incident edges. `parts[v]` is indexed
/// like `graph.incidence()[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fracture {
    pub parts: Vec<SetPartition>,
}

impl Fracture {
    pub fn singletons(h: &Graph) -> Self {
        Fracture { parts: (0..h.n()).map(|v| SetPartition::singletons(h.degree(v))).collect() }
    }

    pub fn trivial(h: &Graph) -> Self {
        Fracture { parts: (0..h.n()).map(|v| SetPartition::single_block(h.degree(v))).collect() }
    }

    /// Product of `(-1)^{b-1} (b-1)!` over vertices with at least one edge.
    pub fn weight(&self) -> i128 {
        self.parts.iter().filter(|p| !p.is_empty()).map(|p| block_weight(p.num_blocks())).product()
    }
}

/// `(-1)^{b-1} (b-1)!`
pub fn block_weight(blocks: usize) -> i128 {
    let f: i128 = (1..blocks as i128).product();
    if blocks % 2 == 1 {
        f
    } else {
        -f
    }
}

fn check_fracture(h: &Graph, rho: &Fracture) -> Result<(), FractureError> {
    if rho.parts.len() != h.n() {
        return Err(FractureError::Malformed(format!("{} parts for {} vertices", rho.parts.len(), h.n())));
    }
    for v in 0..h.n() {
        if rho.parts[v].len() != h.degree(v) {
            return Err(FractureError::Malformed(format!(
                "vertex {v} has degree {} but its partition covers {}",
                h.degree(v),
                rho.parts[v].len()
            )));
        }
    }
    Ok(())
}

/// Vertex ids of the split copies: (v, block) in lexicographic order.
fn split_offsets(rho: &Fracture) -> Vec<usize> {
    let mut off = Vec::with_capacity(rho.parts.len() + 1);
    let mut acc = 0;
    for p in &rho.parts {
        off.push(acc);
        acc += p.num_blocks().max(1);
    }
    off.push(acc);
    off
}

fn fractured_edges(h: &Graph, inc: &[Vec<usize>], blocks: &[&[u8]], off: &[usize], out: &mut Vec<(usize, usize)>) {
    out.clear();
    let mut ends = vec![(0usize, 0usize); h.edge_count()];
    for v in 0..h.n() {
        for (pos, &e) in inc[v].iter().enumerate() {
            let copy = off[v] + blocks[v][pos] as usize;
            if h.edges()[e].0 == v {
                ends[e].0 = copy;
            } else {
                ends[e].1 = copy;
            }
        }
    }
    out.extend(ends);
}

pub fn fractured_graph(h: &Graph, rho: &Fracture) -> Result<Graph, FractureError> {
    check_fracture(h, rho)?;
    let inc = h.incidence();
    let off = split_offsets(rho);
    let blocks: Vec<&[u8]> = rho.parts.iter().map(|p| p.labels()).collect();
    let mut edges = Vec::new();
    fractured_edges(h, &inc, &blocks, &off, &mut edges);
    Ok(Graph::new(*off.last().expect("offsets"), edges).expect("fracture of a simple graph is simple"))
}

/// The canonical pairing i <-> i + m on {0, .., 2m - 1}.
pub fn canonical_pairing(m: usize) -> Vec<usize> {
    (0..2 * m).map(|i| if i < m { i + m } else { i - m }).collect()
}

fn check_pairing(pairing: &[usize]) -> Result<(), FractureError> {
    let n = pairing.len();
    let ok = pairing.iter().enumerate().all(|(i, &j)| j < n && j != i && pairing[j] == i);
    if ok {
        Ok(())
    } else {
        Err(FractureError::BadPairing(n))
    }
}

/// One vertex per block of `sigma`, one edge per pair {g, g^-1} joining the
/// blocks of g and g^-1.
pub fn basegraph(sigma: &SetPartition, pairing: &[usize]) -> Result<MultiGraph, FractureError> {
    check_pairing(pairing)?;
    if sigma.len() != pairing.len() {
        return Err(FractureError::BadPairing(sigma.len()));
    }
    let edges = (0..pairing.len()).filter(|&g| g < pairing[g]).map(|g| (sigma.block_of(g), sigma.block_of(pairing[g])));
    Ok(MultiGraph::new(sigma.num_blocks(), edges).expect("block ids are in range"))
}

/// Exact indicator by summing over every fracture of `h`.
pub fn indicator_bruteforce(phi: GraphProperty, h: &Graph, cap: u128) -> Result<BigInt, FractureError> {
    let needed = (0..h.n()).try_fold(1u128, |acc, v| acc.checked_mul(bell(h.degree(v))));
    let needed = needed.unwrap_or(u128::MAX);
    if needed > cap {
        return Err(FractureError::CapExceeded { needed, cap });
    }
    let inc = h.incidence();
    let per_vertex: Vec<Vec<(Vec<u8>, usize)>> = (0..h.n())
        .map(|v| {
            let mut all = Vec::new();
            for_each_rgs(h.degree(v), |l, b| all.push((l.to_vec(), b)));
            all
        })
        .collect();
    let n = h.n();
    let mut choice = vec![0usize; n];
    let mut off = vec![0usize; n + 1];
    let mut edges = Vec::with_capacity(h.edge_count());
    let mut scratch = EdgeScratch::default();
    let mut total: i128 = 0;
    loop {
        let mut w: i128 = 1;
        for v in 0..n {
            let (_, b) = per_vertex[v][choice[v]];
            off[v + 1] = off[v] + b.max(1);
            if b > 0 {
                w *= block_weight(b);
            }
        }
        let blocks: Vec<&[u8]> = (0..n).map(|v| per_vertex[v][choice[v]].0.as_slice()).collect();
        fractured_edges(h, &inc, &blocks, &off, &mut edges);
        if scratch.check(phi, off[n], edges.iter().copied()) {
            total = total.checked_add(w).expect("bounded by the enumeration cap");
        }
        // odometer
        let mut v = 0;
        loop {
            if v == n {
                return Ok(BigInt::from(total));
            }
            choice[v] += 1;
            if choice[v] < per_vertex[v].len() {
                break;
            }
            choice[v] = 0;
            v += 1;
        }
    }
}

/// Sum over partitions sigma of the generator set whose base graph has the
/// property, of `(-1)^{|sigma|-1} (|sigma|-1)!`, with an explicit pairing.
pub fn fixed_point_indicator_with_pairing(
    phi: GraphProperty,
    pairing: &[usize],
    cap: u128,
) -> Result<BigInt, FractureError> {
    check_pairing(pairing)?;
    let n = pairing.len();
    let needed = bell(n);
    if needed > cap {
        return Err(FractureError::CapExceeded { needed, cap });
    }
    let half: Vec<(usize, usize)> = (0..n).filter(|&g| g < pairing[g]).map(|g| (g, pairing[g])).collect();
    let prefix_len = n.min(4);
    let prefixes = rgs_prefixes(prefix_len);
    let total: i128 = prefixes
        .par_iter()
        .map(|pre| {
            let mut scratch = EdgeScratch::default();
            let mut sum: i128 = 0;
            for_each_rgs_with_prefix(n, pre, |labels, blocks| {
                let edges = half.iter().map(|&(a, b)| (labels[a] as usize, labels[b] as usize));
                if scratch.check(phi, blocks, edges) {
                    sum += block_weight(blocks);
                }
            });
            sum
        })
        .sum();
    Ok(BigInt::from(total))
}

pub fn fixed_point_indicator(phi: GraphProperty, m: usize, cap: u128) -> Result<BigInt, FractureError> {
    if m == 0 {
        return Err(FractureError::Unsupported("m must be at least 1".into()));
    }
    fixed_point_indicator_with_pairing(phi, &canonical_pairing(m), cap)
}

pub fn residue(value: &BigInt, p: u32) -> u32 {
    let r = value % BigInt::from(p);
    let r = if r < BigInt::from(0) { r + BigInt::from(p) } else { r };
    u32::try_from(r).expect("residue below p")
}

#[derive(Clone, Debug, Serialize)]
pub struct IndicatorReport {
    pub property: GraphProperty,
    pub m: usize,
    #[serde(serialize_with = "serialize_bigint")]
    pub integer_value: BigInt,
    pub residues: BTreeMap<u32, u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub breakdown: Option<Vec<ClassRow>>,
}

pub(crate) fn serialize_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(v) {
        Ok(x) => s.serialize_i64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

/// Constant fracture on a Cayley graph: every vertex splits its edges by the
/// generator labels according to `sigma`, a partition of the generator slots.
pub fn constant_fracture(cay: &CayleyGraph, sigma: &SetPartition) -> Result<Fracture, FractureError> {
    let labels: Vec<SetPartition> = vec![sigma.clone(); cay.graph.n()];
    fracture_from_labels(cay, &labels)
}

/// Builds a fracture from per-vertex partitions of generator slots.
pub fn fracture_from_labels(cay: &CayleyGraph, per_vertex: &[SetPartition]) -> Result<Fracture, FractureError> {
    let g = &cay.graph;
    let d = cay.generating_set.len();
    if per_vertex.len() != g.n() || per_vertex.iter().any(|p| p.len() != d) {
        return Err(FractureError::Malformed("slot partitions do not match the generating set".into()));
    }
    let inc = g.incidence();
    let mut parts = Vec::with_capacity(g.n());
    for x in 0..g.n() {
        if inc[x].len() != d {
            return Err(FractureError::Unsupported("constant fractures need a |S|-regular Cayley graph".into()));
        }
        let mut raw = vec![0usize; inc[x].len()];
        for (pos, &e) in inc[x].iter().enumerate() {
            let (a, b) = g.edges()[e];
            let y = if a == x { b } else { a };
            let slot = cay.neighbor[x].iter().position(|&z| z as usize == y).expect("edge comes from a generator");
            raw[pos] = per_vertex[x].block_of(slot);
        }
        parts.push(SetPartition::from_labels(&raw));
    }
    Ok(Fracture { parts })
}

/// Product term of the indicator: the weight if the fractured graph has the
/// property, zero otherwise.
pub fn fracture_term(phi: GraphProperty, h: &Graph, rho: &Fracture) -> Result<i128, FractureError> {
    let f = fractured_graph(h, rho)?;
    Ok(if phi.holds_graph(&f) { rho.weight() } else { 0 })
}

/// Translates per-vertex slot partitions by left multiplication with `g`:
/// the partition used at `x` moves to `g x`.
pub fn translate_labels(group: &FiniteGroup, g: u32, per_vertex: &[SetPartition]) -> Vec<SetPartition> {
    let mut out = per_vertex.to_vec();
    for (x, part) in per_vertex.iter().enumerate() {
        out[group.multiply(g, x as u32) as usize] = part.clone();
    }
    out
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CoveringReport {
    pub partitions: u128,
    /// Slot partitions where the fractured graph and the base graph disagree.
    pub mismatches: Vec<SetPartition>,
}

/// Compares the property on the constant fracture with the property on the
/// base graph, for every partition of the generator slots.
pub fn covering_check(cay: &CayleyGraph, phi: GraphProperty, cap: u128) -> Result<CoveringReport, FractureError> {
    let d = cay.generating_set.len();
    let needed = bell(d);
    if needed > cap {
        return Err(FractureError::CapExceeded { needed, cap });
    }
    let mut report = CoveringReport::default();
    for sigma in enumerate_partitions(d) {
        let base = basegraph(&sigma, &cay.inverse_slot)?;
        let rho = constant_fracture(cay, &sigma)?;
        let lifted = phi.holds_graph(&fractured_graph(&cay.graph, &rho)?);
        report.partitions += 1;
        if lifted != phi.holds_multigraph(&base) {
            report.mismatches.push(sigma);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_fracture_gives_matching() {
        let h = Graph::complete(4);
        let f = fractured_graph(&h, &Fracture::singletons(&h)).unwrap();
        assert_eq!(f.n(), 12);
        assert_eq!(f.edge_count(), 6);
        assert_eq!(f.max_degree(), 1);
        let same = fractured_graph(&h, &Fracture::trivial(&h)).unwrap();
        assert_eq!(same, h);
    }

    #[test]
    fn split_cycle_vertex_gives_path() {
        let c4 = Graph::cycle(4);
        let mut rho = Fracture::trivial(&c4);
        rho.parts[0] = SetPartition::singletons(2);
        let f = fractured_graph(&c4, &rho).unwrap();
        assert_eq!(f.n(), 5);
        assert_eq!(f.edge_count(), 4);
        assert!(f.is_forest() && f.is_connected() && f.max_degree() == 2);
    }

    #[test]
    fn malformed_fracture_rejected() {
        let c4 = Graph::cycle(4);
        let mut rho = Fracture::trivial(&c4);
        rho.parts[1] = SetPartition::singletons(3);
        assert!(matches!(fractured_graph(&c4, &rho), Err(FractureError::Malformed(_))));
    }

    #[test]
    fn basegraph_extremes() {
        let pairing = canonical_pairing(3);
        let m = basegraph(&SetPartition::singletons(6), &pairing).unwrap();
        assert!(m.is_matching() && m.edge_count() == 3);
        let one = basegraph(&SetPartition::single_block(6), &pairing).unwrap();
        assert_eq!(one.n(), 1);
        assert_eq!(one.loops_at(0), 3);
        assert_eq!(basegraph(&SetPartition::singletons(2), &[0, 1]), Err(FractureError::BadPairing(2)));
    }

    #[test]
    fn matching_indicator_on_matching_is_one() {
        let h = Graph::matching(4);
        assert_eq!(indicator_bruteforce(GraphProperty::Matching, &h, DEFAULT_FRACTURE_CAP).unwrap(), BigInt::from(1));
    }

    #[test]
    fn cycle_forest_indicator_by_hand() {
        // 16 fractures of C4: only the trivial one keeps the cycle, weight 1.
        // Each split vertex contributes -1, so the sum over non-empty split sets
        // is sum_{k>=1} C(4,k)(-1)^k = -1.
        let v = indicator_bruteforce(GraphProperty::Forest, &Graph::cycle(4), DEFAULT_FRACTURE_CAP).unwrap();
        assert_eq!(v, BigInt::from(-1));
    }

    #[test]
    fn fixed_point_small_values() {
        let cap = DEFAULT_FRACTURE_CAP;
        assert_eq!(fixed_point_indicator(GraphProperty::Bipartite, 2, cap).unwrap(), BigInt::from(0));
        assert_eq!(fixed_point_indicator(GraphProperty::Bipartite, 3, cap).unwrap(), BigInt::from(-16));
        assert_eq!(residue(&BigInt::from(-16), 5), 4);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            fixed_point_indicator(GraphProperty::Bipartite, 6, 1000),
            Err(FractureError::CapExceeded { needed: 4_213_597, cap: 1000 })
        ));
        assert!(matches!(
            indicator_bruteforce(GraphProperty::Bipartite, &Graph::complete(6), 1000),
            Err(FractureError::CapExceeded { .. })
        ));
    }
}
