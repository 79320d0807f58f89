//! Exhaustive reference implementations used to check the fast paths.

use rand::Rng;

use crate::fractures::{block_weight, canonical_pairing, GraphProperty};
use crate::graph::{Graph, MultiGraph};

/// Largest number of maps the brute-force hom counter will try.
pub const MAX_BRUTE_MAPS: u128 = 50_000_000;

fn map_count(h_n: usize, g_n: usize) -> u128 {
    (0..h_n).fold(1u128, |acc, _| acc.saturating_mul(g_n as u128))
}

/// Visits every map V(H) -> V(G) satisfying the per-vertex filter and the
/// edge condition, returning how many there were.
fn for_each_hom(
    h_edges: &[(usize, usize)],
    h_n: usize,
    g: &Graph,
    allowed: impl Fn(usize, usize) -> bool,
    mut visit: impl FnMut(&[usize]),
) -> u128 {
    assert!(map_count(h_n, g.n()) <= MAX_BRUTE_MAPS, "brute-force map space too large");
    let mut phi = vec![0usize; h_n];
    let mut count = 0u128;
    if h_n == 0 {
        visit(&phi);
        return 1;
    }
    if g.n() == 0 {
        return 0;
    }
    loop {
        let ok = (0..h_n).all(|v| allowed(v, phi[v]))
            && h_edges.iter().all(|&(u, v)| u != v && g.has_edge(phi[u], phi[v]));
        if ok {
            count += 1;
            visit(&phi);
        }
        let mut i = 0;
        loop {
            if i == h_n {
                return count;
            }
            phi[i] += 1;
            if phi[i] < g.n() {
                break;
            }
            phi[i] = 0;
            i += 1;
        }
    }
}

pub fn hom_count(h: &Graph, g: &Graph) -> u128 {
    for_each_hom(h.edges(), h.n(), g, |_, _| true, |_| {})
}

/// Loops in the pattern need loops in the host, so they give zero here.
pub fn hom_count_multigraph(h: &MultiGraph, g: &Graph) -> u128 {
    for_each_hom(h.edges(), h.n(), g, |_, _| true, |_| {})
}

pub fn hom_count_labelled(h: &Graph, s: &[usize], t: &[usize], g: &Graph, gs: &[usize], gt: &[usize]) -> u128 {
    let allowed = |v: usize, x: usize| (!s.contains(&v) || gs.contains(&x)) && (!t.contains(&v) || gt.contains(&x));
    for_each_hom(h.edges(), h.n(), g, allowed, |_| {})
}

/// Colour-prescribed and colourful counts for an H-coloured host.
pub fn coloured_hom_counts(h: &Graph, g: &Graph, colouring: &[usize]) -> (u128, u128) {
    let mut cp = 0;
    let mut cf = 0;
    for_each_hom(h.edges(), h.n(), g, |_, _| true, |phi| {
        if phi.iter().enumerate().all(|(v, &x)| colouring[x] == v) {
            cp += 1;
        }
        let mut hit = vec![false; h.n()];
        phi.iter().for_each(|&x| hit[colouring[x]] = true);
        if hit.iter().all(|&b| b) {
            cf += 1;
        }
    });
    (cp, cf)
}

/// Simple paths with exactly k edges from s to t.
pub fn count_st_paths(g: &Graph, s: usize, t: usize, k: usize) -> u128 {
    fn dfs(g: &Graph, v: usize, t: usize, left: usize, seen: &mut [bool]) -> u128 {
        if left == 0 {
            return (v == t) as u128;
        }
        let mut c = 0;
        for &w in g.neighbors(v) {
            if !seen[w] && (w != t || left == 1) {
                seen[w] = true;
                c += dfs(g, w, t, left - 1, seen);
                seen[w] = false;
            }
        }
        c
    }
    if s == t {
        return (k == 0) as u128;
    }
    let mut seen = vec![false; g.n()];
    seen[s] = true;
    dfs(g, s, t, k, &mut seen)
}

fn extend_walks(g: &Graph, path: &mut Vec<usize>, seen: &mut [bool], left: usize, visit: &mut dyn FnMut(&[usize])) {
    if left == 0 {
        visit(path);
        return;
    }
    let v = *path.last().expect("nonempty path");
    for &w in g.neighbors(v) {
        if !seen[w] {
            seen[w] = true;
            path.push(w);
            extend_walks(g, path, seen, left - 1, visit);
            path.pop();
            seen[w] = false;
        }
    }
}

/// Subgraphs isomorphic to the path with k edges.
pub fn count_k_paths(g: &Graph, k: usize) -> u128 {
    if k == 0 {
        return g.n() as u128;
    }
    let mut c = 0u128;
    let mut seen = vec![false; g.n()];
    for s in 0..g.n() {
        seen[s] = true;
        let mut path = vec![s];
        // keep one orientation: first vertex below last
        extend_walks(g, &mut path, &mut seen, k, &mut |p| c += (p[0] < p[p.len() - 1]) as u128);
        seen[s] = false;
    }
    c
}

/// Cycles of length k, each counted once: the walk must start at the cycle's
/// smallest vertex and leave towards the smaller of its two neighbours.
pub fn count_k_cycles(g: &Graph, k: usize) -> u128 {
    if k < 3 {
        return 0;
    }
    let mut c = 0u128;
    let mut seen = vec![false; g.n()];
    for s in 0..g.n() {
        seen[s] = true;
        let mut path = vec![s];
        extend_walks(g, &mut path, &mut seen, k - 1, &mut |p| {
            let last = p[p.len() - 1];
            if g.has_edge(last, s) && p.iter().all(|&x| x >= s) && p[1] < last {
                c += 1;
            }
        });
        seen[s] = false;
    }
    c
}

/// Bipartite test by searching for a closed walk of odd length; a graph has
/// one iff it has an odd cycle, and the shortest has at most n edges.
pub fn bipartite_by_odd_walk(g: &MultiGraph) -> bool {
    let n = g.n();
    if g.has_loop() {
        return false;
    }
    let m = g.multiplicity_matrix();
    for s in 0..n {
        // reach[v][parity]
        let mut reach = vec![[false; 2]; n];
        reach[s][0] = true;
        for _ in 0..=n {
            let mut next = reach.clone();
            for u in 0..n {
                for v in 0..n {
                    if m[u * n + v] > 0 {
                        for par in 0..2 {
                            if reach[u][par] {
                                next[v][1 - par] = true;
                            }
                        }
                    }
                }
            }
            reach = next;
        }
        if reach[s][1] {
            return false;
        }
    }
    true
}

/// Forest test by edge removal: an edge lies on a cycle iff its endpoints
/// stay connected without it.
pub fn forest_by_edge_removal(g: &MultiGraph) -> bool {
    let edges = g.edges();
    for i in 0..edges.len() {
        let (u, v) = edges[i];
        if u == v {
            return false;
        }
        let mut adj = vec![Vec::new(); g.n()];
        for (j, &(a, b)) in edges.iter().enumerate() {
            if j != i {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut seen = vec![false; g.n()];
        let mut stack = vec![u];
        seen[u] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen[v] {
            return false;
        }
    }
    true
}

pub fn property_by_definition(phi: GraphProperty, g: &MultiGraph) -> bool {
    let degrees_ok = |cap: usize| (0..g.n()).all(|v| g.degree(v) <= cap);
    match phi {
        GraphProperty::Forest => forest_by_edge_removal(g),
        GraphProperty::LinearForest => forest_by_edge_removal(g) && degrees_ok(2),
        GraphProperty::Bipartite => bipartite_by_odd_walk(g),
        GraphProperty::Matching => degrees_ok(1),
    }
}

/// All set partitions of {0..n-1} as block lists, built by inserting each
/// element into an existing block or a new one.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut all: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for x in 0..n {
        let mut next = Vec::new();
        for p in &all {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        all = next;
    }
    all
}

/// The fixed-point indicator by a separate route: block-list partitions and
/// definitional property checks.
pub fn fixed_point_indicator(phi: GraphProperty, m: usize) -> i128 {
    let pairing = canonical_pairing(m);
    set_partitions(2 * m)
        .into_iter()
        .filter(|blocks| {
            let block_of = |g: usize| blocks.iter().position(|b| b.contains(&g)).expect("covered");
            let edges = (0..m).map(|g| (block_of(g), block_of(pairing[g])));
            let base = MultiGraph::new(blocks.len(), edges).expect("valid blocks");
            property_by_definition(phi, &base)
        })
        .map(|blocks| block_weight(blocks.len()))
        .sum()
}

/// Erdős–Rényi graph on n vertices with edge probability `density`.
pub fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v).expect("distinct vertices");
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_examples() {
        assert_eq!(hom_count(&Graph::cycle(3), &Graph::complete(3)), 6);
        assert_eq!(hom_count(&Graph::complete(2), &Graph::complete(3)), 6);
        assert_eq!(hom_count(&Graph::empty(2), &Graph::empty(3)), 9);
    }

    #[test]
    fn path_and_cycle_examples() {
        let k4 = Graph::complete(4);
        assert_eq!(count_k_cycles(&k4, 3), 4);
        assert_eq!(count_k_cycles(&k4, 4), 3);
        assert_eq!(count_k_cycles(&Graph::cycle(5), 5), 1);
        assert_eq!(count_k_paths(&Graph::complete(3), 2), 3);
        assert_eq!(count_k_paths(&Graph::matching(2), 2), 0);
        assert_eq!(count_k_paths(&k4, 3), 12);
        assert_eq!(count_st_paths(&Graph::complete(3), 0, 1, 2), 1);
        assert_eq!(count_st_paths(&Graph::path(5), 0, 5, 5), 1);
    }

    #[test]
    fn definitional_properties() {
        assert!(!bipartite_by_odd_walk(&Graph::cycle(5).to_multigraph()));
        assert!(bipartite_by_odd_walk(&Graph::cycle(6).to_multigraph()));
        assert!(bipartite_by_odd_walk(&MultiGraph::new(2, [(0, 1), (0, 1)]).unwrap()));
        assert!(!forest_by_edge_removal(&MultiGraph::new(2, [(0, 1), (0, 1)]).unwrap()));
        assert!(forest_by_edge_removal(&Graph::path(4).to_multigraph()));
        assert_eq!(set_partitions(5).len(), 52);
    }

    #[test]
    fn oracle_fixed_point_values() {
        assert_eq!(fixed_point_indicator(GraphProperty::Bipartite, 3), -16);
        assert_eq!(fixed_point_indicator(GraphProperty::Bipartite, 4), 192);
    }
}
