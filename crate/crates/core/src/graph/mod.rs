//! Simple graphs and multigraphs shared by every counting module.

mod io;
mod multi;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

pub use io::{parse_edge_list, write_edge_list, EdgeListFile};
pub use multi::MultiGraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0} in a simple graph")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Simple undirected loop-free graph. Edge ids are positions in `edges()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = GraphError;
    fn try_from(r: GraphRepr) -> Result<Self, GraphError> {
        Graph::new(r.vertices, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { vertices: g.n, edges: g.edges }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    /// Duplicate edges are collapsed, keeping the first occurrence.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Returns false when the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.edges.push((u.min(v), u.max(v)));
        insert_sorted(&mut self.adj[u], v);
        insert_sorted(&mut self.adj[v], u);
        Ok(true)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|a| a.binary_search(&v).is_ok())
    }

    /// Edge ids incident to each vertex, in increasing id order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(id);
            inc[v].push(id);
        }
        inc
    }

    pub fn without_edges(&self, drop: &[(usize, usize)]) -> Graph {
        let drop: Vec<(usize, usize)> = drop.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        let kept = self.edges.iter().copied().filter(|e| !drop.contains(e));
        Graph::new(self.n, kept).expect("subgraph of a valid graph")
    }

    /// Induced subgraph on the vertices with `keep[v]`, relabelled in order.
    pub fn induced(&self, keep: &[bool]) -> Graph {
        let mut map = vec![usize::MAX; self.n];
        let mut k = 0;
        for v in 0..self.n {
            if keep[v] {
                map[v] = k;
                k += 1;
            }
        }
        let edges = self.edges.iter().filter(|&&(u, v)| keep[u] && keep[v]).map(|&(u, v)| (map[u], map[v]));
        Graph::new(k, edges).expect("induced subgraph is valid")
    }

    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut c = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = c;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &self.adj[u] {
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

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().iter().all(|&c| c == 0)
    }

    pub fn is_forest(&self) -> bool {
        let comps = self.components().into_iter().max().map_or(0, |c| c + 1);
        self.edges.len() + comps == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_some()
    }

    pub fn two_colouring(&self) -> Option<Vec<u8>> {
        let mut col = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if col[s] != u8::MAX {
                continue;
            }
            col[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &self.adj[u] {
                    if col[w] == u8::MAX {
                        col[w] = 1 - col[u];
                        q.push_back(w);
                    } else if col[w] == col[u] {
                        return None;
                    }
                }
            }
        }
        Some(col)
    }

    pub fn to_multigraph(&self) -> MultiGraph {
        MultiGraph::new(self.n, self.edges.iter().copied()).expect("valid graph")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid")
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle needs at least 3 vertices")
    }

    /// Path with `k` edges on vertices 0..=k.
    pub fn path(k: usize) -> Graph {
        Graph::new(k + 1, (0..k).map(|i| (i, i + 1))).expect("valid")
    }

    /// `k` disjoint edges.
    pub fn matching(k: usize) -> Graph {
        Graph::new(2 * k, (0..k).map(|i| (2 * i, 2 * i + 1))).expect("valid")
    }
}

fn insert_sorted(v: &mut Vec<usize>, x: usize) {
    if let Err(pos) = v.binary_search(&x) {
        v.insert(pos, x);
    }
}
