//! Plain-text edge lists: `u v` per line, `#` comments, optional headers
//! `n: 7`, `S: 0 3`, `T: 5`.

use std::fmt::Write as _;

use super::{Graph, GraphError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeListFile {
    pub graph: Graph,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

fn parse_vertices(line: usize, rest: &str) -> Result<Vec<usize>, GraphError> {
    rest.split_whitespace()
        .map(|tok| tok.parse().map_err(|_| GraphError::Parse { line, msg: format!("bad vertex '{tok}'") }))
        .collect()
}

pub fn parse_edge_list(text: &str) -> Result<EdgeListFile, GraphError> {
    let mut declared_n: Option<usize> = None;
    let mut s = Vec::new();
    let mut t = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some((key, rest)) = body.split_once(':') {
            match key.trim() {
                "S" => s.extend(parse_vertices(line, rest)?),
                "T" => t.extend(parse_vertices(line, rest)?),
                "n" => {
                    let v = parse_vertices(line, rest)?;
                    if v.len() != 1 {
                        return Err(GraphError::Parse { line, msg: "n: takes one value".into() });
                    }
                    declared_n = Some(v[0]);
                }
                other => return Err(GraphError::Parse { line, msg: format!("unknown header '{other}'") }),
            }
            continue;
        }
        let v = parse_vertices(line, body)?;
        if v.len() != 2 {
            return Err(GraphError::Parse { line, msg: format!("expected 'u v', got '{body}'") });
        }
        if v[0] == v[1] {
            return Err(GraphError::Parse { line, msg: format!("self-loop at {}", v[0]) });
        }
        edges.push((v[0], v[1]));
    }
    let seen = edges.iter().flat_map(|&(u, v)| [u, v]).chain(s.iter().copied()).chain(t.iter().copied()).max();
    let n = match (declared_n, seen) {
        (Some(n), Some(m)) if m >= n => return Err(GraphError::VertexOutOfRange { vertex: m, n }),
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => 0,
    };
    Ok(EdgeListFile { graph: Graph::new(n, edges)?, s, t })
}

pub fn write_edge_list(file: &EdgeListFile) -> String {
    let mut out = String::new();
    writeln!(out, "n: {}", file.graph.n()).expect("string write");
    for (name, set) in [("S", &file.s), ("T", &file.t)] {
        if !set.is_empty() {
            let items: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{name}: {}", items.join(" ")).expect("string write");
        }
    }
    for &(u, v) in file.graph.edges() {
        writeln!(out, "{u} {v}").expect("string write");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_headers_and_comments() {
        let f = parse_edge_list("# a path\nS: 0\nT: 3\n0 1\n\n1 2 # middle\n2 3\n").unwrap();
        assert_eq!(f.graph.n(), 4);
        assert_eq!(f.graph.edge_count(), 3);
        assert_eq!(f.s, vec![0]);
        assert_eq!(f.t, vec![3]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_edge_list("0 1 2\n").is_err());
        assert!(parse_edge_list("0 x\n").is_err());
        assert!(parse_edge_list("3 3\n").is_err());
        assert!(parse_edge_list("n: 2\n0 5\n").is_err());
        assert!(parse_edge_list("Q: 1\n").is_err());
    }

    #[test]
    fn roundtrip_keeps_isolated_vertices() {
        let f = EdgeListFile { graph: Graph::new(6, [(0, 1), (4, 2)]).unwrap(), s: vec![1], t: vec![] };
        assert_eq!(parse_edge_list(&write_edge_list(&f)).unwrap(), f);
    }
}
