//! Tree decompositions: exact width by subset DP on small graphs, min-fill
//! elimination above that, and conversion to nice form.

use serde::Serialize;

use crate::graph::Graph;

/// Largest vertex count for the exact subset DP.
pub const EXACT_TREEWIDTH_MAX: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeDecomposition {
    /// Sorted vertex lists.
    pub bags: Vec<Vec<usize>>,
    /// `parent[i]` is None only for the root.
    pub parent: Vec<Option<usize>>,
    pub width: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid tree decomposition: {0}")]
pub struct DecompositionError(pub String);

/// A decomposition of minimum width when `h` has at most
/// [`EXACT_TREEWIDTH_MAX`] vertices, otherwise from a min-fill ordering.
pub fn tree_decomposition(h: &Graph) -> TreeDecomposition {
    let exact = h.n() <= EXACT_TREEWIDTH_MAX;
    let order = if exact { exact_elimination_order(h) } else { min_fill_order(h) };
    let mut td = from_elimination_order(h, &order);
    td.exact = exact;
    td.validate(h).expect("elimination orderings always give valid decompositions");
    td
}

fn adjacency_masks(h: &Graph) -> Vec<u32> {
    (0..h.n()).map(|v| h.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect()
}

/// Vertices outside `s | {v}` reachable from v through `s`.
fn q_size(adj: &[u32], s: u32, v: usize) -> u32 {
    let mut seen = 1u32 << v;
    let mut frontier = 1u32 << v;
    let mut out = 0u32;
    while frontier != 0 {
        let u = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let nb = adj[u] & !seen;
        seen |= nb;
        out |= nb & !s;
        frontier |= nb & s;
    }
    out.count_ones()
}

/// Optimal elimination order by the subset recurrence
/// TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|).
fn exact_elimination_order(h: &Graph) -> Vec<usize> {
    let n = h.n();
    if n == 0 {
        return Vec::new();
    }
    let adj = adjacency_masks(h);
    let full = (1u32 << n) - 1;
    let mut tw = vec![u8::MAX; 1 << n];
    let mut last = vec![0u8; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let cand = tw[prev as usize].max(q_size(&adj, prev, v) as u8);
            if cand < tw[s as usize] {
                tw[s as usize] = cand;
                last[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    order
}

fn min_fill_order(h: &Graph) -> Vec<usize> {
    let n = h.n();
    let mut adj: Vec<Vec<bool>> = (0..n).map(|v| (0..n).map(|w| h.has_edge(v, w)).collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = (usize::MAX, usize::MAX, usize::MAX);
        for v in (0..n).filter(|&v| alive[v]) {
            let nb: Vec<usize> = (0..n).filter(|&w| alive[w] && adj[v][w]).collect();
            let mut fill = 0;
            for (i, &a) in nb.iter().enumerate() {
                fill += nb[i + 1..].iter().filter(|&&b| !adj[a][b]).count();
            }
            best = best.min((fill, nb.len(), v));
        }
        let v = best.2;
        let nb: Vec<usize> = (0..n).filter(|&w| alive[w] && adj[v][w]).collect();
        for &a in &nb {
            for &b in &nb {
                if a != b {
                    adj[a][b] = true;
                }
            }
        }
        alive[v] = false;
        order.push(v);
    }
    order
}

/// One bag per vertex: the vertex and its later neighbours in the filled
/// graph. Components are chained under a single root.
pub fn from_elimination_order(h: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = h.n();
    if n == 0 {
        return TreeDecomposition { bags: vec![Vec::new()], parent: vec![None], width: 0, exact: true };
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<Vec<bool>> = (0..n).map(|v| (0..n).map(|w| h.has_edge(v, w)).collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = (0..n).filter(|&w| adj[v][w] && pos[w] > i).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    adj[a][b] = true;
                }
            }
        }
        parent[i] = later.iter().map(|&w| pos[w]).min();
        let mut bag = later;
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
    }
    // chain the roots so there is exactly one
    let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
    for w in roots.windows(2) {
        parent[w[0]] = Some(w[1]);
    }
    let width = bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1);
    TreeDecomposition { bags, parent, width, exact: false }
}

impl TreeDecomposition {
    pub fn root(&self) -> usize {
        self.parent.iter().position(|p| p.is_none()).expect("decomposition has a root")
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.bags.len()];
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(i);
            }
        }
        ch
    }

    /// Checks the tree shape, vertex and edge coverage, and that the bags
    /// holding any vertex form a connected subtree.
    pub fn validate(&self, h: &Graph) -> Result<(), DecompositionError> {
        let m = self.bags.len();
        if self.parent.len() != m || m == 0 {
            return Err(DecompositionError("bag and parent lists disagree".into()));
        }
        if self.parent.iter().filter(|p| p.is_none()).count() != 1 {
            return Err(DecompositionError("need exactly one root".into()));
        }
        // every node reaches the root without revisiting
        for start in 0..m {
            let mut cur = start;
            let mut steps = 0;
            while let Some(p) = self.parent[cur] {
                if p >= m || steps > m {
                    return Err(DecompositionError("parent links do not form a tree".into()));
                }
                cur = p;
                steps += 1;
            }
        }
        for v in 0..h.n() {
            let holding: Vec<usize> = (0..m).filter(|&i| self.bags[i].contains(&v)).collect();
            if holding.is_empty() {
                return Err(DecompositionError(format!("vertex {v} in no bag")));
            }
            // connected iff exactly one holding node has its parent outside the set
            let tops = holding
                .iter()
                .filter(|&&i| self.parent[i].is_none_or(|p| !self.bags[p].contains(&v)))
                .count();
            if tops != 1 {
                return Err(DecompositionError(format!("bags containing {v} are not connected")));
            }
        }
        for &(u, v) in h.edges() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                return Err(DecompositionError(format!("edge {u}-{v} in no bag")));
            }
        }
        let width = self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1);
        if width != self.width {
            return Err(DecompositionError(format!("width recorded as {} but bags give {width}", self.width)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceNode {
    Leaf,
    Introduce { child: usize, vertex: usize },
    Forget { child: usize, vertex: usize },
    Join { left: usize, right: usize },
}

/// Nodes are stored children first; the last node is the root and has an
/// empty bag.
#[derive(Clone, Debug)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
    pub bags: Vec<Vec<usize>>,
    pub width: usize,
}

impl NiceDecomposition {
    pub fn from_tree(td: &TreeDecomposition) -> Self {
        let mut nice = NiceDecomposition { nodes: Vec::new(), bags: Vec::new(), width: td.width };
        let children = td.children();
        let root = td.root();
        let top = nice.build(td, &children, root);
        let bag = td.bags[root].clone();
        nice.morph(top, &bag, &[]);
        nice
    }

    fn push(&mut self, node: NiceNode, bag: Vec<usize>) -> usize {
        self.nodes.push(node);
        self.bags.push(bag);
        self.nodes.len() - 1
    }

    /// Forgets then introduces vertices to move from bag `from` to `to`.
    fn morph(&mut self, mut id: usize, from: &[usize], to: &[usize]) -> usize {
        let mut bag = from.to_vec();
        for &v in from.iter().filter(|v| !to.contains(v)) {
            bag.retain(|&x| x != v);
            id = self.push(NiceNode::Forget { child: id, vertex: v }, bag.clone());
        }
        for &v in to.iter().filter(|v| !from.contains(v)) {
            let at = bag.partition_point(|&x| x < v);
            bag.insert(at, v);
            id = self.push(NiceNode::Introduce { child: id, vertex: v }, bag.clone());
        }
        id
    }

    fn build(&mut self, td: &TreeDecomposition, children: &[Vec<usize>], t: usize) -> usize {
        let bag = &td.bags[t];
        if children[t].is_empty() {
            let leaf = self.push(NiceNode::Leaf, Vec::new());
            return self.morph(leaf, &[], bag);
        }
        let mut acc: Option<usize> = None;
        for &c in &children[t] {
            let sub = self.build(td, children, c);
            let lifted = self.morph(sub, &td.bags[c], bag);
            acc = Some(match acc {
                None => lifted,
                Some(prev) => self.push(NiceNode::Join { left: prev, right: lifted }, bag.clone()),
            });
        }
        acc.expect("at least one child")
    }
}
