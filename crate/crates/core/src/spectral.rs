//! Adjacency spectra and exhaustive vertex-expansion checks.

use serde::Serialize;

use crate::graph::Graph;

pub const REL_TOL: f64 = 1e-9;
pub const MAX_EXHAUSTIVE_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectralError {
    #[error("graph has no vertices")]
    Empty,
    #[error("exhaustive expansion check limited to {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("QL iteration did not converge")]
    NoConvergence,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    /// Sorted in decreasing order.
    pub eigenvalues: Vec<f64>,
    /// Maximum degree; equals the valency for regular graphs.
    pub valency: usize,
    pub regular: bool,
    pub lambda2: f64,
    pub mu1: f64,
    pub vertex_count: usize,
}

pub fn adjacency_spectrum(graph: &Graph) -> Result<SpectrumReport, SpectralError> {
    let n = graph.n();
    if n == 0 {
        return Err(SpectralError::Empty);
    }
    let mut a = vec![0.0; n * n];
    for &(u, v) in graph.edges() {
        a[u * n + v] = 1.0;
        a[v * n + u] = 1.0;
    }
    let mut eig = symmetric_eigenvalues(a, n)?;
    eig.sort_by(|x, y| y.total_cmp(x));
    let lambda2 = eig.get(1).copied().unwrap_or(eig[0]);
    let degrees: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    Ok(SpectrumReport {
        mu1: eig[0] - lambda2,
        lambda2,
        valency: degrees.iter().copied().max().unwrap_or(0),
        regular: degrees.iter().all(|&d| d == degrees[0]),
        vertex_count: n,
        eigenvalues: eig,
    })
}

/// All eigenvalues of a dense symmetric matrix (row-major, overwritten):
/// Householder reduction to tridiagonal form, then implicit QL.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>, SpectralError> {
    assert_eq!(a.len(), n * n);
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    // The full square is updated each step so every access stays row-major.
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = a[i * n..i * n + l + 1].iter().map(|x| x.abs()).sum();
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let u: Vec<f64> = a[i * n..i * n + l + 1].to_vec();
                let mut f = 0.0;
                for j in 0..=l {
                    let row = &a[j * n..j * n + l + 1];
                    let g: f64 = row.iter().zip(&u).map(|(x, y)| x * y).sum();
                    e[j] = g / h;
                    f += e[j] * u[j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    e[j] -= hh * u[j];
                }
                for j in 0..=l {
                    let (fj, gj) = (u[j], e[j]);
                    let row = &mut a[j * n..j * n + l + 1];
                    for k in 0..=l {
                        row[k] -= fj * e[k] + gj * u[k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = a[i * n + i];
    }
    tridiagonal_ql(&mut d, &mut e)?;
    Ok(d)
}

fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<(), SpectralError> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                return Err(SpectralError::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionCheck {
    pub holds: bool,
    /// A violating vertex set when `holds` is false.
    pub witness: Option<Vec<usize>>,
}

/// Checks |S(X)| >= c (1 - |X|/n) |X| for every vertex set X, where S(X) is
/// the set of vertices outside X with a neighbour in X.
pub fn vertex_expansion_exact(graph: &Graph, c: f64) -> Result<ExpansionCheck, SpectralError> {
    let n = graph.n();
    if n > MAX_EXHAUSTIVE_VERTICES {
        return Err(SpectralError::TooLarge { n, max: MAX_EXHAUSTIVE_VERTICES });
    }
    let adj: Vec<u32> = (0..n).map(|v| graph.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect();
    for mask in 1u32..(1u32 << n) {
        let mut nb = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros();
            nb |= adj[v as usize];
            rest &= rest - 1;
        }
        let boundary = (nb & !mask).count_ones() as f64;
        let size = mask.count_ones() as f64;
        let rhs = c * (1.0 - size / n as f64) * size;
        if boundary < rhs - REL_TOL * rhs.abs().max(1.0) {
            let witness = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            return Ok(ExpansionCheck { holds: false, witness: Some(witness) });
        }
    }
    Ok(ExpansionCheck { holds: true, witness: None })
}

/// The change-of-generators comparison: when every element of S1 is a word
/// of length at most `word_len` in S2, mu1(S1) <= |S1| word_len^2 mu1(S2).
pub fn change_of_generators_bound_holds(mu1_s1: f64, s1_size: usize, word_len: usize, mu1_s2: f64) -> bool {
    let k = (s1_size * word_len * word_len) as f64;
    mu1_s1 <= k * mu1_s2 * (1.0 + REL_TOL) + REL_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= REL_TOL * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn triangle_spectrum() {
        let r = adjacency_spectrum(&Graph::complete(3)).unwrap();
        assert!(close(r.eigenvalues[0], 2.0));
        assert!(close(r.eigenvalues[1], -1.0));
        assert!(close(r.eigenvalues[2], -1.0));
        assert!(close(r.mu1, 3.0));
    }

    #[test]
    fn cycle_spectra_are_circulant() {
        for n in 3..30 {
            let r = adjacency_spectrum(&Graph::cycle(n)).unwrap();
            let mut expect: Vec<f64> =
                (0..n).map(|k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos()).collect();
            expect.sort_by(|a, b| b.total_cmp(a));
            for (x, y) in r.eigenvalues.iter().zip(&expect) {
                assert!((x - y).abs() < 1e-9, "C{n}: {x} vs {y}");
            }
        }
        let c6 = adjacency_spectrum(&Graph::cycle(6)).unwrap();
        assert!(close(c6.lambda2, 1.0));
        assert!(close(c6.mu1, 1.0));
    }

    #[test]
    fn complete_graph_spectrum() {
        let r = adjacency_spectrum(&Graph::complete(40)).unwrap();
        assert!(close(r.eigenvalues[0], 39.0));
        assert!(r.eigenvalues[1..].iter().all(|&x| close(x, -1.0)));
    }

    #[test]
    fn expansion_examples() {
        let k3 = Graph::complete(3);
        assert!(vertex_expansion_exact(&k3, 1.0).unwrap().holds);
        let p3 = Graph::path(3);
        let r = vertex_expansion_exact(&p3, 2.0).unwrap();
        assert!(!r.holds);
        assert!(r.witness.is_some());
        assert!(vertex_expansion_exact(&p3, 0.0).unwrap().holds);
        assert_eq!(
            vertex_expansion_exact(&Graph::cycle(25), 1.0).err(),
            Some(SpectralError::TooLarge { n: 25, max: 24 })
        );
    }

    fn random_graph() -> impl Strategy<Value = Graph> {
        (2usize..30).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..(2 * n)).prop_map(move |es| {
                Graph::new(n, es.into_iter().filter(|(u, v)| u != v)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn trace_and_square_sums(g in random_graph()) {
            let r = adjacency_spectrum(&g).unwrap();
            let sum: f64 = r.eigenvalues.iter().sum();
            let sq: f64 = r.eigenvalues.iter().map(|x| x * x).sum();
            prop_assert!(sum.abs() < 1e-8);
            prop_assert!((sq - 2.0 * g.edge_count() as f64).abs() < 1e-8 * (1.0 + sq));
            let d = r.valency as f64;
            prop_assert!(r.eigenvalues.iter().all(|&x| x <= d + 1e-9 && x >= -d - 1e-9));
        }

        #[test]
        fn bipartite_spectrum_is_symmetric(g in random_graph()) {
            if g.is_bipartite() {
                let r = adjacency_spectrum(&g).unwrap();
                let n = r.eigenvalues.len();
                for i in 0..n {
                    prop_assert!((r.eigenvalues[i] + r.eigenvalues[n - 1 - i]).abs() < 1e-8);
                }
            }
        }
    }
}
