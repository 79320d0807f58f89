//! Homomorphism counts: exact, labelled, colour-prescribed and colourful,
//! and residues mod p through p-reduced quotients.

mod automorphism;
mod decomposition;
mod dp;
mod quotient;

use serde::Serialize;

use crate::algebra::Prime;
use crate::graph::{Graph, MultiGraph};

pub use automorphism::{
    automorphisms, is_automorphism, order_p_automorphism, order_p_automorphism_with_budget, permutation_order,
    AutChoice, AUTOMORPHISM_MAX_VERTICES, DEFAULT_AUTOMORPHISM_CAP, DEFAULT_SEARCH_BUDGET,
};
pub use decomposition::{
    from_elimination_order, tree_decomposition, DecompositionError, NiceDecomposition, NiceNode, TreeDecomposition,
    EXACT_TREEWIDTH_MAX,
};
pub use dp::{Arith, HomCounter, Host, MAX_TABLE_ENTRIES};
pub use quotient::{p_reduced_quotient, quotient_by_automorphism, Reduction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomError {
    #[error("count overflows 128 bits")]
    Overflow,
    #[error("DP table would exceed {MAX_TABLE_ENTRIES} entries")]
    TableTooLarge,
    #[error("bad vertex restriction: {0}")]
    Domain(String),
    #[error("invalid colouring: {0}")]
    InvalidColouring(String),
    #[error("{n} vertices is above the limit of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("{what} exceeded its cap of {cap}")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("permutation is not an automorphism")]
    NotAutomorphism,
    #[error("automorphism does not have order {p}")]
    WrongOrder { p: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
}

fn all_vertices(h_n: usize, g_n: usize) -> Vec<Vec<u32>> {
    vec![(0..g_n as u32).collect(); h_n]
}

pub fn count_homs(h: &Graph, g: &Graph) -> Result<u128, HomError> {
    HomCounter::new(h).count(&Host::new(g), &all_vertices(h.n(), g.n()), Arith::Exact)
}

/// Counts for a pattern that may carry loops or parallel edges. A loop can
/// only go to a loop, so any loop gives zero.
pub fn count_homs_multigraph(h: &MultiGraph, g: &Graph, arith: Arith) -> Result<u128, HomError> {
    if h.has_loop() {
        return Ok(0);
    }
    HomCounter::new(&h.simple_underlying()).count(&Host::new(g), &all_vertices(h.n(), g.n()), arith)
}

/// A graph with two distinguished vertex sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoLabelledGraph {
    pub graph: Graph,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

impl TwoLabelledGraph {
    pub fn new(graph: Graph, s: Vec<usize>, t: Vec<usize>) -> Result<Self, HomError> {
        if let Some(&v) = s.iter().chain(&t).find(|&&v| v >= graph.n()) {
            return Err(HomError::Domain(format!("label on vertex {v} outside the graph")));
        }
        Ok(TwoLabelledGraph { graph, s, t })
    }

    /// Candidate images when mapping into `host`: S goes into S', T into T'.
    pub fn domains_into(&self, host: &TwoLabelledGraph) -> Vec<Vec<u32>> {
        (0..self.graph.n())
            .map(|v| {
                (0..host.graph.n())
                    .filter(|x| {
                        (!self.s.contains(&v) || host.s.contains(x)) && (!self.t.contains(&v) || host.t.contains(x))
                    })
                    .map(|x| x as u32)
                    .collect()
            })
            .collect()
    }
}

pub fn count_homs_labelled(j: &TwoLabelledGraph, host: &TwoLabelledGraph, arith: Arith) -> Result<u128, HomError> {
    HomCounter::new(&j.graph).count(&Host::new(&host.graph), &j.domains_into(host), arith)
}

/// A graph G with a homomorphism c: G -> H.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HColouredGraph {
    pub graph: Graph,
    pub colouring: Vec<usize>,
}

impl HColouredGraph {
    pub fn new(graph: Graph, colouring: Vec<usize>, h: &Graph) -> Result<Self, HomError> {
        if colouring.len() != graph.n() {
            return Err(HomError::InvalidColouring(format!(
                "{} colours for {} vertices",
                colouring.len(),
                graph.n()
            )));
        }
        if let Some(&c) = colouring.iter().find(|&&c| c >= h.n()) {
            return Err(HomError::InvalidColouring(format!("colour {c} is not a pattern vertex")));
        }
        if let Some(&(u, v)) = graph.edges().iter().find(|&&(u, v)| !h.has_edge(colouring[u], colouring[v])) {
            return Err(HomError::InvalidColouring(format!("edge {u}-{v} does not map to an edge")));
        }
        Ok(HColouredGraph { graph, colouring })
    }
}

fn colour_classes(h: &Graph, gc: &HColouredGraph) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new(); h.n()];
    for (x, &c) in gc.colouring.iter().enumerate() {
        out[c].push(x as u32);
    }
    out
}

/// Homomorphisms phi with c(phi(v)) = v for every pattern vertex.
pub fn count_cp_homs(h: &Graph, gc: &HColouredGraph) -> Result<u128, HomError> {
    HomCounter::new(h).count(&Host::new(&gc.graph), &colour_classes(h, gc), Arith::Exact)
}

/// Homomorphisms whose image meets every colour exactly once, by inclusion
/// and exclusion over deleted colour sets.
pub fn count_colourful_homs(h: &Graph, gc: &HColouredGraph) -> Result<u128, HomError> {
    let k = h.n();
    if k > 24 {
        return Err(HomError::TooManyVertices { n: k, max: 24 });
    }
    let counter = HomCounter::new(h);
    let host = Host::new(&gc.graph);
    let mut plus: u128 = 0;
    let mut minus: u128 = 0;
    for deleted in 0u32..(1 << k) {
        let keep: Vec<u32> =
            (0..gc.graph.n()).filter(|&x| deleted >> gc.colouring[x] & 1 == 0).map(|x| x as u32).collect();
        let c = counter.count(&host, &vec![keep; k], Arith::Exact)?;
        if deleted.count_ones() % 2 == 0 {
            plus = plus.checked_add(c).ok_or(HomError::Overflow)?;
        } else {
            minus = minus.checked_add(c).ok_or(HomError::Overflow)?;
        }
    }
    plus.checked_sub(minus).ok_or(HomError::Overflow)
}

#[derive(Clone, Debug, Serialize)]
pub struct ModPCount {
    pub p: u32,
    pub residue: u32,
    /// Width of the decomposition used for the final DP (None when a loop
    /// made the answer zero).
    pub width_used: Option<usize>,
    pub quotient_sequence: Vec<usize>,
    pub quotient: MultiGraph,
}

/// hom(H, G) mod p, computed on the p-reduced quotient of H.
pub fn count_homs_mod_p(h: &Graph, g: &Graph, p: u32, choice: AutChoice) -> Result<ModPCount, HomError> {
    Prime::new(p).map_err(|_| HomError::NotPrime(p))?;
    let red = p_reduced_quotient(&h.to_multigraph(), p, choice, DEFAULT_SEARCH_BUDGET)?;
    if red.has_loop() {
        return Ok(ModPCount {
            p,
            residue: 0,
            width_used: None,
            quotient_sequence: red.sequence,
            quotient: red.quotient,
        });
    }
    let pattern = red.quotient.simple_underlying();
    let counter = HomCounter::new(&pattern);
    let r = counter.count(&Host::new(g), &all_vertices(pattern.n(), g.n()), Arith::Mod(p as u64))?;
    Ok(ModPCount {
        p,
        residue: r as u32,
        width_used: Some(counter.width()),
        quotient_sequence: red.sequence,
        quotient: red.quotient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(count_homs(&Graph::empty(1), &Graph::cycle(5)).unwrap(), 5);
        assert_eq!(count_homs(&Graph::complete(2), &k3).unwrap(), 6);
        assert_eq!(count_homs(&Graph::cycle(3), &k3).unwrap(), 6);
        let looped = MultiGraph::new(2, [(0, 1), (1, 1)]).unwrap();
        assert_eq!(count_homs_multigraph(&looped, &k3, Arith::Exact).unwrap(), 0);
    }

    #[test]
    fn labelled_counts() {
        let p2 = TwoLabelledGraph::new(Graph::path(2), vec![0], vec![2]).unwrap();
        let k4 = TwoLabelledGraph::new(Graph::complete(4), vec![0], vec![1]).unwrap();
        assert_eq!(count_homs_labelled(&p2, &k4, Arith::Exact).unwrap(), 2);
        assert!(TwoLabelledGraph::new(Graph::path(2), vec![3], vec![]).is_err());
    }

    #[test]
    fn colourful_and_prescribed() {
        let k2 = Graph::complete(2);
        let gc = HColouredGraph::new(k2.clone(), vec![0, 1], &k2).unwrap();
        assert_eq!(count_cp_homs(&k2, &gc).unwrap(), 1);
        assert_eq!(count_colourful_homs(&k2, &gc).unwrap(), 2);
        assert!(HColouredGraph::new(k2.clone(), vec![0, 0], &k2).is_err());
        let c5 = Graph::cycle(5);
        let id = HColouredGraph::new(c5.clone(), (0..5).collect(), &c5).unwrap();
        assert_eq!(count_colourful_homs(&c5, &id).unwrap(), 10 * count_cp_homs(&c5, &id).unwrap());
    }

    #[test]
    fn mod_p_counts() {
        let c4 = Graph::cycle(4);
        let r = count_homs_mod_p(&c4, &Graph::complete(5), 2, AutChoice::First).unwrap();
        assert_eq!(r.residue, 0);
        assert_eq!(r.quotient_sequence, vec![4, 2, 1]);
        let r = count_homs_mod_p(&Graph::empty(1), &Graph::cycle(7), 5, AutChoice::First).unwrap();
        assert_eq!(r.residue, 2);
        assert_eq!(count_homs_mod_p(&c4, &c4, 4, AutChoice::First).unwrap_err(), HomError::NotPrime(4));
    }
}
