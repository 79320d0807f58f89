//! Parity of s-t paths, k-cycles and k-paths through Möbius inversion over
//! the partition lattice of the path's vertices.
//!
//! Modulo 2 only partitions with blocks of size at most two survive, so the
//! s-t parity is a sum of labelled homomorphism counts from quotients of the
//! path by partial matchings.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::graph::Graph;
use crate::homcount::{Arith, HomCounter, HomError, Host};
use crate::partitions::{for_each_rgs, SetPartition};

/// Longest path pattern handled; the quotient list has T(k+1) entries.
pub const MAX_PATH_EDGES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PathCycleError {
    #[error("s and t must be distinct vertices of the graph")]
    BadEndpoints,
    #[error("length {k} outside the supported range {min}..={max}")]
    BadLength { k: usize, min: usize, max: usize },
    #[error(transparent)]
    Hom(#[from] HomError),
}

/// mu(bottom, rho) in the partition lattice: (-1)^{n-|rho|} prod (|B|-1)!.
pub fn mobius_bottom(rho: &SetPartition) -> i128 {
    let n = rho.len();
    let prod: i128 = rho.block_sizes().iter().map(|&b| (1..b as i128).product::<i128>()).product();
    if (n - rho.num_blocks()).is_multiple_of(2) {
        prod
    } else {
        -prod
    }
}

/// A labelled quotient of the path 0..=k by a partition.
#[derive(Clone, Debug)]
pub struct PathQuotient {
    pub rho: SetPartition,
    pub counter: HomCounter,
    /// Quotient vertex holding path vertex 0 (label S) and k (label T).
    pub s_vertex: usize,
    pub t_vertex: usize,
}

/// Quotient of P_k by rho, or None when two adjacent path vertices share a
/// block (a loop, so no homomorphism into a loop-free host).
pub fn path_quotient(k: usize, rho: &SetPartition) -> Option<(Graph, usize, usize)> {
    assert_eq!(rho.len(), k + 1);
    let mut g = Graph::empty(rho.num_blocks());
    for i in 0..k {
        let (a, b) = (rho.block_of(i), rho.block_of(i + 1));
        if a == b {
            return None;
        }
        g.add_edge(a, b).expect("blocks in range");
    }
    Some((g, rho.block_of(0), rho.block_of(k)))
}

fn partial_matchings(n: usize) -> Vec<SetPartition> {
    fn rec(i: usize, labels: &mut Vec<Option<usize>>, next: &mut usize, out: &mut Vec<SetPartition>) {
        let n = labels.len();
        if i == n {
            let raw: Vec<usize> = labels.iter().map(|l| l.expect("assigned")).collect();
            out.push(SetPartition::from_labels(&raw));
            return;
        }
        if labels[i].is_some() {
            return rec(i + 1, labels, next, out);
        }
        let id = *next;
        *next += 1;
        labels[i] = Some(id);
        rec(i + 1, labels, next, out);
        for j in i + 1..n {
            if labels[j].is_none() {
                labels[j] = Some(id);
                rec(i + 1, labels, next, out);
                labels[j] = None;
            }
        }
        labels[i] = None;
        *next -= 1;
    }
    let mut out = Vec::new();
    rec(0, &mut vec![None; n], &mut 0, &mut out);
    out
}

#[derive(Debug)]
pub struct QuotientFamily {
    pub k: usize,
    /// Number of partitions with blocks of size at most two.
    pub partitions: usize,
    pub quotients: Vec<PathQuotient>,
    pub max_degree: usize,
}

fn build_family(k: usize) -> QuotientFamily {
    let all = partial_matchings(k + 1);
    let mut quotients = Vec::new();
    let mut max_degree = 0;
    for rho in &all {
        let Some((g, s_vertex, t_vertex)) = path_quotient(k, rho) else { continue };
        assert!(g.max_degree() <= 4, "quotient by blocks of size <= 2 has degree <= 4");
        max_degree = max_degree.max(g.max_degree());
        quotients.push(PathQuotient { rho: rho.clone(), counter: HomCounter::new(&g), s_vertex, t_vertex });
    }
    QuotientFamily { k, partitions: all.len(), quotients, max_degree }
}

/// The loop-free quotients of P_k by partial matchings, built once per k.
pub fn quotient_family(k: usize) -> Result<Arc<QuotientFamily>, PathCycleError> {
    if !(1..=MAX_PATH_EDGES).contains(&k) {
        return Err(PathCycleError::BadLength { k, min: 1, max: MAX_PATH_EDGES });
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuotientFamily>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().expect("cache lock").get(&k) {
        return Ok(Arc::clone(f));
    }
    let fam = Arc::new(build_family(k));
    cache.lock().expect("cache lock").insert(k, Arc::clone(&fam));
    Ok(fam)
}

#[derive(Clone, Debug, Serialize)]
pub struct StPathReport {
    pub parity: u8,
    /// Partitions with blocks of size at most two.
    pub partitions: usize,
    /// Of those, quotients without a loop (the terms evaluated).
    pub terms_evaluated: usize,
    /// Terms with an odd count.
    pub odd_terms: usize,
    pub max_quotient_degree: usize,
}

fn check_endpoints(g: &Graph, s: usize, t: usize) -> Result<(), PathCycleError> {
    if s == t || s >= g.n() || t >= g.n() {
        return Err(PathCycleError::BadEndpoints);
    }
    Ok(())
}

fn st_parity_on_host(fam: &QuotientFamily, host: &Host, s: usize, t: usize) -> Result<(u8, usize), PathCycleError> {
    let all: Vec<u32> = (0..host.n() as u32).collect();
    let mut parity = 0u8;
    let mut odd = 0;
    for q in &fam.quotients {
        if q.s_vertex == q.t_vertex {
            continue; // s != t, so the merged label has no image
        }
        let n = q.counter.pattern().n();
        let mut domains = vec![all.clone(); n];
        domains[q.s_vertex] = vec![s as u32];
        domains[q.t_vertex] = vec![t as u32];
        let c = q.counter.count(host, &domains, Arith::Mod(2))?;
        if c == 1 {
            parity ^= 1;
            odd += 1;
        }
    }
    Ok((parity, odd))
}

/// Parity of the number of s-t paths with exactly k edges.
pub fn st_path_parity(g: &Graph, s: usize, t: usize, k: usize) -> Result<u8, PathCycleError> {
    Ok(st_path_parity_explained(g, s, t, k)?.parity)
}

pub fn st_path_parity_explained(g: &Graph, s: usize, t: usize, k: usize) -> Result<StPathReport, PathCycleError> {
    check_endpoints(g, s, t)?;
    let fam = quotient_family(k)?;
    let (parity, odd_terms) = st_parity_on_host(&fam, &Host::new(g), s, t)?;
    Ok(StPathReport {
        parity,
        partitions: fam.partitions,
        terms_evaluated: fam.quotients.len(),
        odd_terms,
        max_quotient_degree: fam.max_degree,
    })
}

/// Exact number of s-t paths with k edges from the full Möbius sum over all
/// partitions of the path's vertices. Exponential; meant for checking.
pub fn st_path_count_full_mobius(g: &Graph, s: usize, t: usize, k: usize) -> Result<i128, PathCycleError> {
    check_endpoints(g, s, t)?;
    if !(1..=8).contains(&k) {
        return Err(PathCycleError::BadLength { k, min: 1, max: 8 });
    }
    let host = Host::new(g);
    let all: Vec<u32> = (0..g.n() as u32).collect();
    let mut total: i128 = 0;
    let mut err = None;
    for_each_rgs(k + 1, |labels, _| {
        if err.is_some() {
            return;
        }
        let rho = SetPartition::from_rgs(labels.to_vec()).expect("valid rgs");
        let Some((q, sv, tv)) = path_quotient(k, &rho) else { return };
        if sv == tv {
            return;
        }
        let mut domains = vec![all.clone(); q.n()];
        domains[sv] = vec![s as u32];
        domains[tv] = vec![t as u32];
        match HomCounter::new(&q).count(&host, &domains, Arith::Exact) {
            Ok(c) => total += mobius_bottom(&rho) * c as i128,
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e.into()),
        None => Ok(total),
    }
}

/// Parity of the number of k-cycles, using the edge order of `g`.
pub fn cycle_parity(g: &Graph, k: usize) -> Result<u8, PathCycleError> {
    let order: Vec<usize> = (0..g.edge_count()).collect();
    cycle_parity_with_order(g, k, &order)
}

/// Each cycle is charged to its first edge in `order`: the rest of it is a
/// path with k-1 edges between that edge's endpoints, avoiding all earlier
/// edges.
pub fn cycle_parity_with_order(g: &Graph, k: usize, order: &[usize]) -> Result<u8, PathCycleError> {
    if k < 3 {
        return Err(PathCycleError::BadLength { k, min: 3, max: MAX_PATH_EDGES + 1 });
    }
    let fam = quotient_family(k - 1)?;
    let edges = g.edges();
    assert_eq!(order.len(), edges.len(), "order must list every edge once");
    let mut removed: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
    let mut parity = 0;
    for &e in order {
        let (u, v) = edges[e];
        removed.push((u, v));
        let gi = g.without_edges(&removed);
        parity ^= st_parity_on_host(&fam, &Host::new(&gi), u, v)?.0;
    }
    Ok(parity)
}

/// G with pendant vertices u' on u and v' on v, optionally joined.
pub fn pendant_graph(g: &Graph, u: usize, v: usize, join: bool) -> (Graph, usize, usize) {
    let mut h = g.clone();
    let up = h.add_vertex();
    let vp = h.add_vertex();
    h.add_edge(up, u).expect("fresh vertex");
    h.add_edge(vp, v).expect("fresh vertex");
    if join {
        h.add_edge(up, vp).expect("fresh vertices");
    }
    (h, up, vp)
}

/// Parity of the number of k-paths, as the sum over unordered vertex pairs
/// of the (k+3)-cycle parity of G+ minus that of G-. Ordering the edges of G+
/// with {u', v'} first makes every later term coincide with G-'s, so each
/// difference is the st term on G- between u' and v'; those paths are the
/// u-v paths of G with the two pendant edges attached.
pub fn path_parity(g: &Graph, k: usize) -> Result<u8, PathCycleError> {
    if !(1..=MAX_PATH_EDGES - 2).contains(&k) {
        return Err(PathCycleError::BadLength { k, min: 1, max: MAX_PATH_EDGES - 2 });
    }
    let fam = quotient_family(k)?;
    let host = Host::new(g);
    let mut parity = 0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            parity ^= st_parity_on_host(&fam, &host, u, v)?.0;
        }
    }
    Ok(parity)
}

/// The pendant form of `path_parity`: the st term on G- for each pair.
pub fn path_parity_via_pendants(g: &Graph, k: usize) -> Result<u8, PathCycleError> {
    if !(1..=MAX_PATH_EDGES - 2).contains(&k) {
        return Err(PathCycleError::BadLength { k, min: 1, max: MAX_PATH_EDGES - 2 });
    }
    let fam = quotient_family(k + 2)?;
    let mut parity = 0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let (minus, up, vp) = pendant_graph(g, u, v, false);
            parity ^= st_parity_on_host(&fam, &Host::new(&minus), up, vp)?.0;
        }
    }
    Ok(parity)
}

/// The same sum with both cycle parities computed in full.
pub fn path_parity_via_cycles(g: &Graph, k: usize) -> Result<u8, PathCycleError> {
    let mut parity = 0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let (plus, _, _) = pendant_graph(g, u, v, true);
            let (minus, _, _) = pendant_graph(g, u, v, false);
            parity ^= cycle_parity(&plus, k + 3)? ^ cycle_parity(&minus, k + 3)?;
        }
    }
    Ok(parity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;

    #[test]
    fn mobius_values() {
        assert_eq!(mobius_bottom(&SetPartition::singletons(4)), 1);
        assert_eq!(mobius_bottom(&SetPartition::single_block(3)), 2);
        assert_eq!(mobius_bottom(&SetPartition::single_block(4)), -6);
        for rho in enumerate_partitions(5) {
            let odd = mobius_bottom(&rho) % 2 != 0;
            assert_eq!(odd, rho.block_sizes().iter().all(|&b| b <= 2));
        }
    }

    #[test]
    fn mobius_matches_lattice_recursion() {
        let all: Vec<SetPartition> = enumerate_partitions(4).collect();
        let refines = |a: &SetPartition, b: &SetPartition| (0..4).all(|i| (0..4).all(|j| a.block_of(i) != a.block_of(j) || b.block_of(i) == b.block_of(j)));
        // coarser partitions have fewer blocks; process by decreasing block count
        let mut idx: Vec<usize> = (0..all.len()).collect();
        idx.sort_by_key(|&i| std::cmp::Reverse(all[i].num_blocks()));
        let mut val = vec![0i128; all.len()];
        for &i in &idx {
            val[i] = if all[i].num_blocks() == 4 {
                1
            } else {
                -idx.iter().filter(|&&j| j != i && refines(&all[j], &all[i])).map(|&j| val[j]).sum::<i128>()
            };
        }
        for (i, rho) in all.iter().enumerate() {
            assert_eq!(val[i], mobius_bottom(rho));
        }
    }

    #[test]
    fn telephone_numbers() {
        let counts: Vec<usize> = (1..=8).map(|n| partial_matchings(n).len()).collect();
        assert_eq!(counts, [1, 2, 4, 10, 26, 76, 232, 764]);
    }

    #[test]
    fn small_parities() {
        assert_eq!(st_path_parity(&Graph::path(5), 0, 5, 5).unwrap(), 1);
        assert_eq!(st_path_parity(&Graph::complete(3), 0, 1, 2).unwrap(), 1);
        assert_eq!(cycle_parity(&Graph::complete(4), 3).unwrap(), 0);
        assert_eq!(cycle_parity(&Graph::cycle(5), 5).unwrap(), 1);
        assert_eq!(path_parity(&Graph::complete(3), 2).unwrap(), 1);
        assert_eq!(path_parity(&Graph::matching(2), 2).unwrap(), 0);
        assert_eq!(st_path_parity(&Graph::path(2), 0, 0, 2), Err(PathCycleError::BadEndpoints));
    }

    #[test]
    fn path_parity_forms_agree() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (1, 4)]).unwrap();
        for k in 1..=4 {
            let a = path_parity(&g, k).unwrap();
            assert_eq!(a, path_parity_via_pendants(&g, k).unwrap(), "k={k}");
            assert_eq!(a, path_parity_via_cycles(&g, k).unwrap(), "k={k}");
        }
    }

    #[test]
    fn quotients_have_degree_at_most_four() {
        for k in 1..=9 {
            assert!(quotient_family(k).unwrap().max_degree <= 4);
        }
    }
}
