//! Orbit quotients by order-p automorphisms and the p-reduced quotient.

use serde::Serialize;

use super::automorphism::{is_automorphism, order_p_automorphism_with_budget, permutation_order, AutChoice};
use super::HomError;
use crate::graph::MultiGraph;

/// One vertex per orbit of `alpha`; orbits are adjacent when any members
/// are, and an orbit with an inner edge (or a member loop) gets a loop.
/// Parallel edges are merged.
pub fn quotient_by_automorphism(h: &MultiGraph, alpha: &[usize], p: u32) -> Result<MultiGraph, HomError> {
    if !is_automorphism(h, alpha) {
        return Err(HomError::NotAutomorphism);
    }
    if permutation_order(alpha) != p as u64 {
        return Err(HomError::WrongOrder { p });
    }
    let n = h.n();
    let mut orbit = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if orbit[s] != usize::MAX {
            continue;
        }
        let mut x = s;
        while orbit[x] == usize::MAX {
            orbit[x] = count;
            x = alpha[x];
        }
        count += 1;
    }
    let mut edges: Vec<(usize, usize)> = h
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (orbit[u], orbit[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Ok(MultiGraph::new(count, edges).expect("orbit ids in range"))
}

#[derive(Clone, Debug, Serialize)]
pub struct Reduction {
    pub quotient: MultiGraph,
    /// Vertex counts, starting with the input.
    pub sequence: Vec<usize>,
    pub automorphisms: Vec<Vec<usize>>,
}

impl Reduction {
    pub fn has_loop(&self) -> bool {
        self.quotient.has_loop()
    }
}

/// Quotients by order-p automorphisms until none is left. Parallel edges of
/// the input are merged first; homomorphism counts only see adjacency.
pub fn p_reduced_quotient(h: &MultiGraph, p: u32, choice: AutChoice, budget: u64) -> Result<Reduction, HomError> {
    let mut edges: Vec<(usize, usize)> = h.edges().to_vec();
    edges.sort_unstable();
    edges.dedup();
    let mut cur = MultiGraph::new(h.n(), edges).expect("same vertices");
    let mut sequence = vec![cur.n()];
    let mut automorphisms = Vec::new();
    let mut step = 0u64;
    loop {
        let ch = match choice {
            AutChoice::First => AutChoice::First,
            AutChoice::Seeded(s) => AutChoice::Seeded(s.wrapping_add(step)),
        };
        let Some(alpha) = order_p_automorphism_with_budget(&cur, p, ch, budget)? else {
            break;
        };
        cur = quotient_by_automorphism(&cur, &alpha, p)?;
        sequence.push(cur.n());
        automorphisms.push(alpha);
        step += 1;
    }
    Ok(Reduction { quotient: cur, sequence, automorphisms })
}
