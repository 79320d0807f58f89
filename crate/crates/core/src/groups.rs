//! Finite matrix groups materialised by breadth-first closure, and their
//! Cayley graphs.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::algebra::{AlgebraError, Mat3, Prime};
use crate::graph::Graph;

pub const DEFAULT_CLOSURE_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("quotient too large at this precision: more than {cap} elements (reached {partial})")]
    CapExceeded { cap: usize, partial: usize },
    #[error("generating set reaches {reached} of {order} elements")]
    NotGenerating { reached: usize, order: usize },
    #[error("element is not in the group")]
    NotAMember,
    #[error("no generators supplied")]
    NoGenerators,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A finite group of 3x3 matrices with dense element ids.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    p: Prime,
    precision: usize,
    stride: usize,
    arena: Vec<u8>,
    index: HashMap<Box<[u8]>, u32>,
    generators: Vec<Mat3>,
    /// `action[2g]` is right multiplication by generator g, `action[2g + 1]` by its inverse.
    action: Vec<Vec<u32>>,
}

pub fn closure(generators: &[Mat3], cap: usize) -> Result<FiniteGroup, GroupError> {
    let first = generators.first().ok_or(GroupError::NoGenerators)?;
    let (p, precision) = (first.modulus(), first.precision());
    let mut moves = Vec::with_capacity(2 * generators.len());
    for g in generators {
        if g.modulus() != p {
            return Err(AlgebraError::ModulusMismatch.into());
        }
        if g.precision() != precision {
            return Err(AlgebraError::PrecisionMismatch { left: precision, right: g.precision() }.into());
        }
        moves.push(g.clone());
        moves.push(g.inverse()?);
    }
    let id = Mat3::identity(p, precision);
    let stride = id.key().len();
    let mut grp = FiniteGroup {
        p,
        precision,
        stride,
        arena: Vec::new(),
        index: HashMap::new(),
        generators: generators.to_vec(),
        action: vec![Vec::new(); moves.len()],
    };
    grp.insert(&id.key());
    let mut queue = VecDeque::from([0u32]);
    while let Some(e) = queue.pop_front() {
        let x = grp.element(e);
        for (mi, m) in moves.iter().enumerate() {
            let key = x.mul_unchecked(m).key();
            let target = match grp.index.get(key.as_slice()) {
                Some(&t) => t,
                None => {
                    if grp.order() >= cap {
                        return Err(GroupError::CapExceeded { cap, partial: grp.order() });
                    }
                    let t = grp.insert(&key);
                    queue.push_back(t);
                    t
                }
            };
            let row = &mut grp.action[mi];
            if row.len() <= e as usize {
                row.resize(e as usize + 1, u32::MAX);
            }
            row[e as usize] = target;
        }
    }
    Ok(grp)
}

impl FiniteGroup {
    fn insert(&mut self, key: &[u8]) -> u32 {
        let id = self.index.len() as u32;
        self.arena.extend_from_slice(key);
        self.index.insert(key.into(), id);
        id
    }

    pub fn order(&self) -> usize {
        self.index.len()
    }

    pub fn identity_id(&self) -> u32 {
        0
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn generators(&self) -> &[Mat3] {
        &self.generators
    }

    pub fn element(&self, id: u32) -> Mat3 {
        let s = id as usize * self.stride;
        Mat3::from_key(self.p, self.precision, &self.arena[s..s + self.stride])
    }

    pub fn id_of(&self, m: &Mat3) -> Option<u32> {
        if m.modulus() != self.p || m.precision() != self.precision {
            return None;
        }
        self.index.get(m.key().as_slice()).copied()
    }

    /// Id of `e * g` for generator `g` (or its inverse).
    pub fn act(&self, e: u32, generator: usize, inverse: bool) -> u32 {
        self.action[2 * generator + inverse as usize][e as usize]
    }

    pub fn multiply(&self, a: u32, b: u32) -> u32 {
        let prod = self.element(a).mul_unchecked(&self.element(b));
        self.id_of(&prod).expect("group is closed")
    }

    pub fn inverse(&self, a: u32) -> u32 {
        let inv = self.element(a).inverse().expect("group elements are invertible");
        self.id_of(&inv).expect("group is closed")
    }

    pub fn element_order(&self, id: u32) -> u64 {
        let x = self.element(id);
        let mut cur = x.clone();
        let mut n = 1;
        while !cur.is_identity() {
            cur = cur.mul_unchecked(&x);
            n += 1;
        }
        n
    }

    /// Group order as a power of p, if it is one.
    pub fn p_exponent(&self) -> Option<u32> {
        let p = self.p.get() as usize;
        let mut n = self.order();
        let mut e = 0;
        while n > 1 {
            if !n.is_multiple_of(p) {
                return None;
            }
            n /= p;
            e += 1;
        }
        Some(e)
    }
}

/// Cayley graph C(G, S) on element ids.
#[derive(Clone, Debug, Serialize)]
pub struct CayleyGraph {
    pub graph: Graph,
    /// Symmetric generating set as element ids, identity removed.
    pub generating_set: Vec<u32>,
    /// `inverse_slot[s]` is the position of the inverse of `generating_set[s]`.
    pub inverse_slot: Vec<usize>,
    /// `neighbor[x][s]` is the id of x * generating_set[s].
    #[serde(skip)]
    pub neighbor: Vec<Vec<u32>>,
    pub dropped_identity: bool,
    pub collapsed_edges: usize,
}

pub fn cayley_graph(group: &FiniteGroup, generators: &[Mat3]) -> Result<CayleyGraph, GroupError> {
    let mut set: Vec<u32> = Vec::new();
    let mut dropped_identity = false;
    for g in generators {
        let id = group.id_of(g).ok_or(GroupError::NotAMember)?;
        for x in [id, group.inverse(id)] {
            if x == group.identity_id() {
                dropped_identity = true;
            } else if !set.contains(&x) {
                set.push(x);
            }
        }
    }
    if dropped_identity {
        log::warn!("identity in generating set dropped; Cayley graph valency reduced");
    }
    let inverse_slot: Vec<usize> = set
        .iter()
        .map(|&s| set.iter().position(|&t| t == group.inverse(s)).expect("set is symmetric"))
        .collect();
    let gens: Vec<Mat3> = set.iter().map(|&s| group.element(s)).collect();
    let n = group.order();
    let mut neighbor = Vec::with_capacity(n);
    for x in 0..n as u32 {
        let xm = group.element(x);
        neighbor.push(gens.iter().map(|s| group.id_of(&xm.mul_unchecked(s)).expect("group is closed")).collect::<Vec<_>>());
    }
    let reached = bfs_reach(&neighbor, group.identity_id());
    if reached != n {
        return Err(GroupError::NotGenerating { reached, order: n });
    }
    let mut graph = Graph::empty(n);
    let mut collapsed_edges = 0;
    for (x, row) in neighbor.iter().enumerate() {
        for &y in row {
            if (y as usize) > x && !graph.add_edge(x, y as usize).expect("valid ids") {
                collapsed_edges += 1;
            }
        }
    }
    if collapsed_edges > 0 {
        log::warn!("{collapsed_edges} parallel Cayley edges collapsed; graph is not |S|-regular");
    }
    Ok(CayleyGraph { graph, generating_set: set, inverse_slot, neighbor, dropped_identity, collapsed_edges })
}

fn bfs_reach(neighbor: &[Vec<u32>], start: u32) -> usize {
    let mut seen = vec![false; neighbor.len()];
    seen[start as usize] = true;
    let mut q = VecDeque::from([start]);
    let mut count = 1;
    while let Some(x) = q.pop_front() {
        for &y in &neighbor[x as usize] {
            if !seen[y as usize] {
                seen[y as usize] = true;
                count += 1;
                q.push_back(y);
            }
        }
    }
    count
}

impl CayleyGraph {
    pub fn valency(&self) -> usize {
        self.generating_set.len()
    }

    /// Edge list text, one `u v` per line.
    pub fn to_edge_list(&self) -> String {
        self.graph.edges().iter().map(|(u, v)| format!("{u} {v}\n")).collect()
    }

    pub fn to_json(&self, group: &FiniteGroup) -> String {
        #[derive(Serialize)]
        struct View<'a> {
            p: u32,
            precision: usize,
            group_order: usize,
            valency: usize,
            generating_set: &'a [u32],
            edges: &'a [(usize, usize)],
        }
        serde_json::to_string(&View {
            p: group.modulus().get(),
            precision: group.precision(),
            group_order: group.order(),
            valency: self.valency(),
            generating_set: &self.generating_set,
            edges: self.graph.edges(),
        })
        .expect("serialisable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::p3_matrix_generators;

    #[test]
    fn level_zero_is_cyclic_of_order_three() {
        let gens = p3_matrix_generators(0);
        let g = closure(&gens, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.element_order(g.id_of(&gens[0]).unwrap()), 3);
        assert_eq!(g.element_order(g.identity_id()), 1);
        let cay = cayley_graph(&g, &[gens[1].clone(), gens[2].clone()]).unwrap();
        assert!(cay.dropped_identity);
        assert_eq!(cay.graph.edge_count(), 3);
        assert_eq!(cay.valency(), 2);
    }

    #[test]
    fn trivial_group() {
        let p = Prime::new(3).unwrap();
        let g = closure(&[Mat3::identity(p, 2)], 10).unwrap();
        assert_eq!(g.order(), 1);
        let cay = cayley_graph(&g, &[]).unwrap();
        assert_eq!(cay.graph.n(), 1);
        assert_eq!(cay.graph.edge_count(), 0);
    }

    #[test]
    fn cap_is_reported_with_partial_count() {
        let gens = p3_matrix_generators(2);
        match closure(&gens, 50) {
            Err(GroupError::CapExceeded { cap: 50, partial }) => assert_eq!(partial, 50),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn non_generating_set_is_rejected() {
        let p = Prime::new(5).unwrap();
        let x = Mat3::from_ints(p, 0, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        let y = Mat3::from_ints(p, 0, [[1, 0, 1], [0, 1, 0], [0, 0, 1]]);
        let g = closure(&[x.clone(), y], 1000).unwrap();
        assert_eq!(g.order(), 25);
        assert_eq!(cayley_graph(&g, &[x]).err(), Some(GroupError::NotGenerating { reached: 5, order: 25 }));
    }
}
