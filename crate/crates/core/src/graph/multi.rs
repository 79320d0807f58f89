use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// Undirected multigraph; loops and parallel edges are kept with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    n: usize,
    /// Stored with `u <= v`; a loop is `(v, v)`.
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut out = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            out.push((u.min(v), u.max(v)));
        }
        Ok(MultiGraph { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// A loop contributes 2.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v && b == v).count()
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    pub fn has_multiedge(&self) -> bool {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e.windows(2).any(|w| w[0] == w[1])
    }

    /// Row-major `n x n` multiplicities; the diagonal counts loops.
    pub fn multiplicity_matrix(&self) -> Vec<u32> {
        let mut m = vec![0u32; self.n * self.n];
        for &(u, v) in &self.edges {
            m[u * self.n + v] += 1;
            if u != v {
                m[v * self.n + u] += 1;
            }
        }
        m
    }

    /// Drops loops and collapses parallel edges.
    pub fn simple_underlying(&self) -> Graph {
        Graph::new(self.n, self.edges.iter().copied().filter(|&(u, v)| u != v)).expect("valid vertices")
    }

    /// Any loop or parallel pair is a cycle.
    pub fn is_forest(&self) -> bool {
        if self.has_loop() || self.has_multiedge() {
            return false;
        }
        self.simple_underlying().is_forest()
    }

    /// Loops are odd cycles; parallel edges are even and harmless.
    pub fn is_bipartite(&self) -> bool {
        !self.has_loop() && self.simple_underlying().is_bipartite()
    }

    pub fn is_linear_forest(&self) -> bool {
        self.is_forest() && self.max_degree() <= 2
    }

    pub fn is_matching(&self) -> bool {
        self.max_degree() <= 1
    }

    pub fn components(&self) -> Vec<usize> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut comp = vec![usize::MAX; self.n];
        let mut c = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = c;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        q.push_back(w);
                    }
                }
            }
            c += 1;
        }
        comp
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> MultiGraph {
        MultiGraph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v]))).expect("valid permutation")
    }

    /// Cheap isomorphism invariant: vertex count, edge count and the sorted
    /// (degree, loops) multiset.
    pub fn invariant(&self) -> (usize, usize, Vec<(usize, usize)>) {
        let mut d: Vec<(usize, usize)> = (0..self.n).map(|v| (self.degree(v), self.loops_at(v))).collect();
        d.sort_unstable();
        (self.n, self.edges.len(), d)
    }

    /// Calls `visit` on every multiplicity-preserving bijection `self -> other`
    /// until it returns false.
    pub fn for_each_isomorphism(&self, other: &MultiGraph, mut visit: impl FnMut(&[usize]) -> bool) {
        if self.invariant() != other.invariant() {
            return;
        }
        let n = self.n;
        let ma = self.multiplicity_matrix();
        let mb = other.multiplicity_matrix();
        let sig_a: Vec<(usize, usize)> = (0..n).map(|v| (self.degree(v), self.loops_at(v))).collect();
        let sig_b: Vec<(usize, usize)> = (0..n).map(|v| (other.degree(v), other.loops_at(v))).collect();
        // most constrained first: high degree, then by index
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(sig_a[v].0));
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        struct Ctx<'a> {
            n: usize,
            ma: &'a [u32],
            mb: &'a [u32],
            sig_a: &'a [(usize, usize)],
            sig_b: &'a [(usize, usize)],
            order: &'a [usize],
        }
        fn rec(
            ctx: &Ctx,
            depth: usize,
            map: &mut [usize],
            used: &mut [bool],
            visit: &mut dyn FnMut(&[usize]) -> bool,
        ) -> bool {
            if depth == ctx.n {
                return visit(map);
            }
            let v = ctx.order[depth];
            for w in 0..ctx.n {
                if used[w] || ctx.sig_a[v] != ctx.sig_b[w] {
                    continue;
                }
                let ok = ctx.order[..depth]
                    .iter()
                    .all(|&u| ctx.ma[v * ctx.n + u] == ctx.mb[w * ctx.n + map[u]]);
                if !ok {
                    continue;
                }
                map[v] = w;
                used[w] = true;
                let go_on = rec(ctx, depth + 1, map, used, visit);
                used[w] = false;
                map[v] = usize::MAX;
                if !go_on {
                    return false;
                }
            }
            true
        }
        let ctx = Ctx { n, ma: &ma, mb: &mb, sig_a: &sig_a, sig_b: &sig_b, order: &order };
        rec(&ctx, 0, &mut map, &mut used, &mut visit);
    }

    pub fn find_isomorphism(&self, other: &MultiGraph) -> Option<Vec<usize>> {
        let mut found = None;
        self.for_each_isomorphism(other, |m| {
            found = Some(m.to_vec());
            false
        });
        found
    }

    pub fn is_isomorphic(&self, other: &MultiGraph) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// Vertex permutations preserving all multiplicities.
    pub fn vertex_automorphism_count(&self) -> u64 {
        let mut c = 0u64;
        self.for_each_isomorphism(self, |_| {
            c += 1;
            true
        });
        c
    }

    /// Automorphisms acting on vertices and edges: parallel edges may be
    /// permuted among themselves and each loop may be flipped.
    pub fn automorphism_count(&self) -> u128 {
        let m = self.multiplicity_matrix();
        let mut edge_factor: u128 = 1;
        for u in 0..self.n {
            let loops = m[u * self.n + u] as u128;
            edge_factor *= factorial(loops) * (1u128 << loops);
            for v in u + 1..self.n {
                edge_factor *= factorial(m[u * self.n + v] as u128);
            }
        }
        self.vertex_automorphism_count() as u128 * edge_factor
    }
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn property_conventions() {
        let loop1 = MultiGraph::new(1, [(0, 0)]).unwrap();
        assert!(!loop1.is_bipartite());
        assert!(!loop1.is_forest());
        let double = MultiGraph::new(2, [(0, 1), (0, 1)]).unwrap();
        assert!(double.is_bipartite());
        assert!(!double.is_forest());
        assert!(!double.is_matching());
        assert!(MultiGraph::new(4, [(0, 1), (2, 3)]).unwrap().is_matching());
        assert!(MultiGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap().is_linear_forest());
        assert!(!MultiGraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap().is_linear_forest());
    }

    #[test]
    fn edge_aware_automorphisms() {
        // triple edge: swap ends, permute the three edges
        assert_eq!(MultiGraph::new(2, [(0, 1); 3]).unwrap().automorphism_count(), 12);
        // double edge with a pendant edge
        assert_eq!(MultiGraph::new(3, [(0, 1), (0, 1), (1, 2)]).unwrap().automorphism_count(), 2);
        // one vertex with m loops: 2^m m!
        assert_eq!(MultiGraph::new(1, [(0, 0); 3]).unwrap().automorphism_count(), 48);
        assert_eq!(Graph::matching(3).to_multigraph().automorphism_count(), 48);
        assert_eq!(Graph::cycle(5).to_multigraph().automorphism_count(), 10);
    }

    #[test]
    fn isomorphism_respects_multiplicity() {
        let a = MultiGraph::new(3, [(0, 1), (0, 1), (1, 2)]).unwrap();
        let b = MultiGraph::new(3, [(2, 1), (0, 2), (0, 2)]).unwrap();
        let c = MultiGraph::new(3, [(0, 1), (1, 2), (1, 2)]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(a.is_isomorphic(&c));
        let d = MultiGraph::new(3, [(0, 1), (1, 2), (2, 2)]).unwrap();
        assert!(!a.is_isomorphic(&d));
    }
}
