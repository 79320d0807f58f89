//! Automorphism listing and order-p automorphism search on small multigraphs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::HomError;
use crate::graph::MultiGraph;

/// Vertex limit for listing every automorphism.
pub const AUTOMORPHISM_MAX_VERTICES: usize = 12;
pub const DEFAULT_AUTOMORPHISM_CAP: usize = 1_000_000;
/// Backtracking nodes allowed in one order-p search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

/// How an order-p automorphism is picked when there are several.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AutChoice {
    /// First found, scanning vertices in order and trying moved images
    /// before fixed ones.
    #[default]
    First,
    /// Vertex and candidate orders shuffled from the seed.
    Seeded(u64),
}

/// Every automorphism (multiplicities and loops preserved).
pub fn automorphisms(h: &MultiGraph, cap: usize) -> Result<Vec<Vec<usize>>, HomError> {
    if h.n() > AUTOMORPHISM_MAX_VERTICES {
        return Err(HomError::TooManyVertices { n: h.n(), max: AUTOMORPHISM_MAX_VERTICES });
    }
    let mut out = Vec::new();
    let mut over = false;
    h.for_each_isomorphism(h, |m| {
        if out.len() == cap {
            over = true;
            return false;
        }
        out.push(m.to_vec());
        true
    });
    if over {
        return Err(HomError::CapExceeded { what: "automorphism list", cap: cap as u64 });
    }
    Ok(out)
}

pub fn is_automorphism(h: &MultiGraph, alpha: &[usize]) -> bool {
    let n = h.n();
    if alpha.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &a in alpha {
        if a >= n || seen[a] {
            return false;
        }
        seen[a] = true;
    }
    let m = h.multiplicity_matrix();
    (0..n).all(|u| (0..n).all(|v| m[u * n + v] == m[alpha[u] * n + alpha[v]]))
}

/// Order of a permutation (lcm of cycle lengths).
pub fn permutation_order(alpha: &[usize]) -> u64 {
    let mut seen = vec![false; alpha.len()];
    let mut order = 1u64;
    for s in 0..alpha.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0u64;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = alpha[x];
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

struct Search<'a> {
    n: usize,
    p: usize,
    mult: &'a [u32],
    sig: Vec<(usize, usize)>,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    map: Vec<usize>,
    pre: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Arc count of the chain through v, and whether it closes into a cycle.
    fn chain_through(&self, v: usize) -> (usize, bool) {
        let mut arcs = 0;
        let mut x = v;
        while self.map[x] != usize::MAX {
            x = self.map[x];
            arcs += 1;
            if x == v {
                return (arcs, true);
            }
        }
        let mut y = v;
        while self.pre[y] != usize::MAX {
            y = self.pre[y];
            arcs += 1;
        }
        (arcs, false)
    }

    fn run(&mut self, depth: usize) -> Result<bool, HomError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(HomError::CapExceeded { what: "automorphism search", cap: self.budget });
        }
        if depth == self.n {
            return Ok((0..self.n).any(|v| self.map[v] != v));
        }
        let v = self.order[depth];
        for ci in 0..self.candidates[v].len() {
            let w = self.candidates[v][ci];
            if self.pre[w] != usize::MAX || self.sig[v] != self.sig[w] {
                continue;
            }
            let n = self.n;
            let consistent = self.order[..depth]
                .iter()
                .chain(std::iter::once(&v))
                .all(|&u| {
                    let img = if u == v { w } else { self.map[u] };
                    self.mult[v * n + u] == self.mult[w * n + img]
                });
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.pre[w] = v;
            let (arcs, closed) = self.chain_through(v);
            let fine = if closed { arcs == 1 || arcs == self.p } else { arcs < self.p };
            if fine && self.run(depth + 1)? {
                return Ok(true);
            }
            self.map[v] = usize::MAX;
            self.pre[w] = usize::MAX;
        }
        Ok(false)
    }
}

/// An automorphism of order exactly p (all cycles of length 1 or p, not the
/// identity), or None if there is none.
pub fn order_p_automorphism(h: &MultiGraph, p: u32, choice: AutChoice) -> Result<Option<Vec<usize>>, HomError> {
    order_p_automorphism_with_budget(h, p, choice, DEFAULT_SEARCH_BUDGET)
}

pub fn order_p_automorphism_with_budget(
    h: &MultiGraph,
    p: u32,
    choice: AutChoice,
    budget: u64,
) -> Result<Option<Vec<usize>>, HomError> {
    let n = h.n();
    let p = p as usize;
    if p < 2 || n < p {
        return Ok(None);
    }
    let mult = h.multiplicity_matrix();
    let sig: Vec<(usize, usize)> = (0..n).map(|v| (h.degree(v), h.loops_at(v))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // moved images first, in cyclic order after v
    let mut candidates: Vec<Vec<usize>> = (0..n).map(|v| (1..=n).map(|d| (v + d) % n).collect()).collect();
    if let AutChoice::Seeded(seed) = choice {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        order.shuffle(&mut rng);
        for c in &mut candidates {
            c.shuffle(&mut rng);
        }
    }
    let mut s = Search {
        n,
        p,
        mult: &mult,
        sig,
        order,
        candidates,
        map: vec![usize::MAX; n],
        pre: vec![usize::MAX; n],
        nodes: 0,
        budget,
    };
    Ok(if s.run(0)? { Some(s.map) } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn automorphism_group_sizes() {
        for k in 3..9 {
            assert_eq!(automorphisms(&Graph::cycle(k).to_multigraph(), DEFAULT_AUTOMORPHISM_CAP).unwrap().len(), 2 * k);
        }
        assert_eq!(automorphisms(&Graph::complete(6).to_multigraph(), DEFAULT_AUTOMORPHISM_CAP).unwrap().len(), 720);
        assert!(matches!(
            automorphisms(&Graph::complete(6).to_multigraph(), 10),
            Err(HomError::CapExceeded { .. })
        ));
        assert!(matches!(
            automorphisms(&Graph::empty(13).to_multigraph(), 10),
            Err(HomError::TooManyVertices { n: 13, max: 12 })
        ));
    }

    #[test]
    fn order_p_search() {
        let wedge = Graph::path(2).to_multigraph();
        assert_eq!(order_p_automorphism(&wedge, 2, AutChoice::First).unwrap(), Some(vec![2, 1, 0]));
        assert_eq!(order_p_automorphism(&wedge, 3, AutChoice::First).unwrap(), None);
        let c6 = Graph::cycle(6).to_multigraph();
        let a = order_p_automorphism(&c6, 3, AutChoice::First).unwrap().unwrap();
        assert!(is_automorphism(&c6, &a));
        assert_eq!(permutation_order(&a), 3);
        for seed in 0..20 {
            let b = order_p_automorphism(&c6, 2, AutChoice::Seeded(seed)).unwrap().unwrap();
            assert!(is_automorphism(&c6, &b) && permutation_order(&b) == 2);
        }
        // rigid: the 6-vertex asymmetric tree has no nontrivial automorphism
        let rigid = Graph::new(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)]).unwrap().to_multigraph();
        assert_eq!(automorphisms(&rigid, 10).unwrap().len(), 1);
        assert_eq!(order_p_automorphism(&rigid, 2, AutChoice::First).unwrap(), None);
    }

    #[test]
    fn loops_are_respected() {
        let g = MultiGraph::new(2, [(0, 1), (0, 0)]).unwrap();
        assert_eq!(order_p_automorphism(&g, 2, AutChoice::First).unwrap(), None);
        let h = MultiGraph::new(2, [(0, 1), (0, 0), (1, 1)]).unwrap();
        assert_eq!(order_p_automorphism(&h, 2, AutChoice::First).unwrap(), Some(vec![1, 0]));
    }
}
