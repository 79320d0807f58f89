use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, MultiGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphProperty {
    Forest,
    LinearForest,
    Bipartite,
    Matching,
}

impl GraphProperty {
    pub const ALL: [GraphProperty; 4] =
        [GraphProperty::Forest, GraphProperty::LinearForest, GraphProperty::Bipartite, GraphProperty::Matching];

    pub fn holds_multigraph(self, g: &MultiGraph) -> bool {
        let mut scratch = EdgeScratch::default();
        scratch.check(self, g.n(), g.edges().iter().copied())
    }

    pub fn holds_graph(self, g: &Graph) -> bool {
        let mut scratch = EdgeScratch::default();
        scratch.check(self, g.n(), g.edges().iter().copied())
    }
}

impl fmt::Display for GraphProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GraphProperty::Forest => "forest",
            GraphProperty::LinearForest => "linear_forest",
            GraphProperty::Bipartite => "bipartite",
            GraphProperty::Matching => "matching",
        };
        f.write_str(s)
    }
}

impl FromStr for GraphProperty {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "forest" => Ok(GraphProperty::Forest),
            "linear_forest" | "linearforest" => Ok(GraphProperty::LinearForest),
            "bipartite" => Ok(GraphProperty::Bipartite),
            "matching" => Ok(GraphProperty::Matching),
            other => Err(format!("unknown property '{other}'")),
        }
    }
}

/// Reusable buffers for deciding a property from a raw edge list. Loops and
/// parallel edges are handled with multigraph semantics.
#[derive(Default, Debug)]
pub(crate) struct EdgeScratch {
    parent: Vec<u32>,
    parity: Vec<u8>,
    degree: Vec<u8>,
}

impl EdgeScratch {
    fn reset(&mut self, n: usize) {
        self.parent.clear();
        self.parent.extend(0..n as u32);
        self.parity.clear();
        self.parity.resize(n, 0);
        self.degree.clear();
        self.degree.resize(n, 0);
    }

    fn find(&self, mut v: u32) -> (u32, u8) {
        let mut par = 0;
        while self.parent[v as usize] != v {
            par ^= self.parity[v as usize];
            v = self.parent[v as usize];
        }
        (v, par)
    }

    pub(crate) fn check(
        &mut self,
        phi: GraphProperty,
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> bool {
        self.reset(n);
        for (u, v) in edges {
            if matches!(phi, GraphProperty::Matching | GraphProperty::LinearForest) {
                self.degree[u] = self.degree[u].saturating_add(1);
                self.degree[v] = self.degree[v].saturating_add(1);
                let cap = if phi == GraphProperty::Matching { 1 } else { 2 };
                if self.degree[u] > cap || self.degree[v] > cap {
                    return false;
                }
                if phi == GraphProperty::Matching {
                    continue;
                }
            }
            let (ru, pu) = self.find(u as u32);
            let (rv, pv) = self.find(v as u32);
            if ru == rv {
                // closes a cycle; only bipartite survives, and only if it is even
                if phi != GraphProperty::Bipartite || pu == pv {
                    return false;
                }
            } else {
                self.parent[ru as usize] = rv;
                self.parity[ru as usize] = pu ^ pv ^ 1;
            }
        }
        true
    }
}
