//! Homomorphism counting along a nice tree decomposition. Tables are dense
//! over the per-vertex candidate lists of the bag.

use super::decomposition::{tree_decomposition, NiceDecomposition, NiceNode};
use super::HomError;
use crate::graph::Graph;

/// Largest DP table the counter will allocate.
pub const MAX_TABLE_ENTRIES: usize = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arith {
    Exact,
    Mod(u64),
}

impl Arith {
    #[inline]
    fn add(self, a: u128, b: u128) -> Result<u128, HomError> {
        match self {
            Arith::Exact => a.checked_add(b).ok_or(HomError::Overflow),
            Arith::Mod(m) => Ok((a + b) % m as u128),
        }
    }

    #[inline]
    fn mul(self, a: u128, b: u128) -> Result<u128, HomError> {
        match self {
            Arith::Exact => a.checked_mul(b).ok_or(HomError::Overflow),
            Arith::Mod(m) => Ok(a * b % m as u128),
        }
    }

    fn one(self) -> u128 {
        match self {
            Arith::Mod(1) => 0,
            _ => 1,
        }
    }
}

/// Loop-free host with an adjacency matrix for constant-time edge tests.
#[derive(Clone, Debug)]
pub struct Host {
    n: usize,
    adj: Vec<bool>,
}

impl Host {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut adj = vec![false; n * n];
        for &(u, v) in g.edges() {
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        Host { n, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn adjacent(&self, a: u32, b: u32) -> bool {
        self.adj[a as usize * self.n + b as usize]
    }
}

/// A pattern graph with its nice decomposition, reusable across hosts.
#[derive(Clone, Debug)]
pub struct HomCounter {
    pattern: Graph,
    nice: NiceDecomposition,
}

impl HomCounter {
    pub fn new(pattern: &Graph) -> Self {
        let td = tree_decomposition(pattern);
        HomCounter { pattern: pattern.clone(), nice: NiceDecomposition::from_tree(&td) }
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn width(&self) -> usize {
        self.nice.width
    }

    /// Counts maps sending every pattern vertex v into `domains[v]` and every
    /// pattern edge onto a host edge.
    pub fn count(&self, host: &Host, domains: &[Vec<u32>], arith: Arith) -> Result<u128, HomError> {
        assert_eq!(domains.len(), self.pattern.n(), "one domain per pattern vertex");
        if domains.iter().any(|d| d.is_empty()) {
            return Ok(0);
        }
        if let Some(&bad) = domains.iter().flatten().find(|&&x| x as usize >= host.n) {
            return Err(HomError::Domain(format!("host vertex {bad} out of range")));
        }
        let size = |v: usize| domains[v].len();
        let mut tables: Vec<Option<Vec<u128>>> = vec![None; self.nice.nodes.len()];
        for (id, node) in self.nice.nodes.iter().enumerate() {
            let bag = &self.nice.bags[id];
            let table = match *node {
                NiceNode::Leaf => vec![arith.one()],
                NiceNode::Introduce { child, vertex } => {
                    let old = tables[child].take().expect("child computed");
                    let child_bag = &self.nice.bags[child];
                    let q = bag.iter().position(|&x| x == vertex).expect("introduced vertex in bag");
                    let low: usize = bag[q + 1..].iter().map(|&u| size(u)).product();
                    let dv = size(vertex);
                    let total = old.len().checked_mul(dv).filter(|&t| t <= MAX_TABLE_ENTRIES);
                    let total = total.ok_or(HomError::TableTooLarge)?;
                    // neighbours of `vertex` already in the bag, with their strides in the child table
                    let mut checks = Vec::new();
                    let mut stride = 1usize;
                    for &u in child_bag.iter().rev() {
                        if self.pattern.has_edge(u, vertex) {
                            checks.push((stride, size(u), &domains[u]));
                        }
                        stride *= size(u);
                    }
                    let mut out = vec![0u128; total];
                    for (c, &val) in old.iter().enumerate() {
                        if val == 0 {
                            continue;
                        }
                        let (hi, lo) = (c / low, c % low);
                        for (x, &hx) in domains[vertex].iter().enumerate() {
                            let ok = checks.iter().all(|&(st, d, dom)| host.adjacent(dom[(c / st) % d], hx));
                            if ok {
                                out[(hi * dv + x) * low + lo] = val;
                            }
                        }
                    }
                    out
                }
                NiceNode::Forget { child, vertex } => {
                    let old = tables[child].take().expect("child computed");
                    let child_bag = &self.nice.bags[child];
                    let q = child_bag.iter().position(|&x| x == vertex).expect("forgotten vertex in child bag");
                    let low: usize = child_bag[q + 1..].iter().map(|&u| size(u)).product();
                    let dv = size(vertex);
                    let mut out = vec![0u128; old.len() / dv];
                    for (c, &val) in old.iter().enumerate() {
                        if val == 0 {
                            continue;
                        }
                        let hi = c / (dv * low);
                        let lo = c % low;
                        let slot = &mut out[hi * low + lo];
                        *slot = arith.add(*slot, val)?;
                    }
                    out
                }
                NiceNode::Join { left, right } => {
                    let a = tables[left].take().expect("child computed");
                    let b = tables[right].take().expect("child computed");
                    a.iter().zip(&b).map(|(&x, &y)| arith.mul(x, y)).collect::<Result<Vec<_>, _>>()?
                }
            };
            debug_assert_eq!(table.len(), bag.iter().map(|&u| size(u)).product::<usize>());
            tables[id] = Some(table);
        }
        let root = tables.pop().flatten().expect("root table");
        Ok(root[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(h: &Graph, g: &Graph) -> Vec<Vec<u32>> {
        vec![(0..g.n() as u32).collect(); h.n()]
    }

    #[test]
    fn basic_counts() {
        let k3 = Graph::complete(3);
        let host = Host::new(&k3);
        let c = |h: &Graph| HomCounter::new(h).count(&host, &full(h, &k3), Arith::Exact).unwrap();
        assert_eq!(c(&Graph::empty(1)), 3);
        assert_eq!(c(&Graph::complete(2)), 6);
        assert_eq!(c(&Graph::cycle(3)), 6);
        assert_eq!(c(&Graph::cycle(4)), 18);
        assert_eq!(c(&Graph::complete(4)), 0);
        assert_eq!(c(&Graph::empty(0)), 1);
    }

    #[test]
    fn modular_and_restricted() {
        let k4 = Graph::complete(4);
        let host = Host::new(&k4);
        let p3 = Graph::path(2);
        let counter = HomCounter::new(&p3);
        // 4 * 3 * 3 walks of length 2
        assert_eq!(counter.count(&host, &full(&p3, &k4), Arith::Exact).unwrap(), 36);
        assert_eq!(counter.count(&host, &full(&p3, &k4), Arith::Mod(5)).unwrap(), 1);
        let pinned = vec![vec![0], (0..4).collect(), vec![1]];
        assert_eq!(counter.count(&host, &pinned, Arith::Exact).unwrap(), 2);
        let empty = vec![vec![], (0..4).collect(), vec![1]];
        assert_eq!(counter.count(&host, &empty, Arith::Exact).unwrap(), 0);
    }
}
