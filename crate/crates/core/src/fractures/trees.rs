//! Unlabelled trees and the count of labelled trees via automorphisms.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::graph::{Graph, MultiGraph};

pub const MAX_TREE_VERTICES: usize = 10;

/// One representative per isomorphism class of trees on `n` vertices, grown
/// leaf by leaf from the classes on `n - 1` vertices.
pub fn unlabelled_trees(n: usize) -> Vec<Graph> {
    assert!((1..=MAX_TREE_VERTICES).contains(&n), "tree enumeration supports 1..={MAX_TREE_VERTICES} vertices");
    let mut level = vec![Graph::empty(1)];
    for size in 1..n {
        type Key = (usize, usize, Vec<(usize, usize)>);
        let mut seen: HashMap<Key, Vec<MultiGraph>> = HashMap::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..size {
                let mut g = t.clone();
                let leaf = g.add_vertex();
                g.add_edge(v, leaf).expect("fresh leaf");
                let mg = g.to_multigraph();
                let bucket = seen.entry(mg.invariant()).or_default();
                if !bucket.iter().any(|h| h.is_isomorphic(&mg)) {
                    bucket.push(mg);
                    next.push(g);
                }
            }
        }
        level = next;
    }
    level
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeIdentity {
    pub n: usize,
    pub classes: usize,
    /// Sum over classes of 1/|Aut(T)|, as numerator/denominator.
    pub lhs: (i64, i64),
    /// n^{n-2}/n!
    pub rhs: (i64, i64),
    pub holds: bool,
}

/// Sum of 1/|Aut(T)| over unlabelled trees against n^{n-2}/n!, exactly.
pub fn cayley_tree_identity_check(n: usize) -> TreeIdentity {
    let trees = unlabelled_trees(n);
    let lhs = trees
        .iter()
        .map(|t| Ratio::new(1i64, t.to_multigraph().vertex_automorphism_count() as i64))
        .fold(Ratio::from_integer(0), |a, b| a + b);
    let nn = n as i64;
    let fact: i64 = (1..=nn).product();
    let rhs = Ratio::new(nn.pow(n as u32 - 1), nn * fact);
    TreeIdentity {
        n,
        classes: trees.len(),
        lhs: (*lhs.numer(), *lhs.denom()),
        rhs: (*rhs.numer(), *rhs.denom()),
        holds: lhs == rhs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_class_counts() {
        let counts: Vec<usize> = (1..=9).map(|n| unlabelled_trees(n).len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11, 23, 47]);
        assert!(unlabelled_trees(6).iter().all(|t| t.is_forest() && t.is_connected()));
    }

    #[test]
    fn small_identities() {
        let three = cayley_tree_identity_check(3);
        assert_eq!(three.lhs, (1, 2));
        assert!(three.holds);
        let four = cayley_tree_identity_check(4);
        assert_eq!(four.lhs, (2, 3));
        assert!((1..=9).all(|n| cayley_tree_identity_check(n).holds));
    }
}
