use std::fs;
use std::path::Path;

use modcount::algebra::{find_generator_delta, Prime, QuadField};
use modcount::expander::{build_level, level_report};
use modcount::fractures::{
    basegraph_class_table, fixed_point_indicator, indicator_bruteforce, residue, GraphProperty, IndicatorReport,
};
use modcount::graph::{parse_edge_list, write_edge_list, EdgeListFile};
use modcount::homcount::{
    count_colourful_homs, count_cp_homs, count_homs, count_homs_labelled, count_homs_mod_p, p_reduced_quotient,
    Arith, AutChoice, HColouredGraph, TwoLabelledGraph, DEFAULT_SEARCH_BUDGET,
};
use modcount::oracle;
use modcount::pathcycle::{cycle_parity, path_parity, st_path_parity, st_path_parity_explained};
use modcount::presentations::{build_presentation, search_delta_matching, RelationWord};
use modcount::selftest::{run_criterion, SelftestConfig, CRITERIA, KNOWN_UNATTAINABLE};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::{Mode, Output};

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialise")
}

fn read_graph(path: &Path) -> Result<EdgeListFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse_edge_list(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn prime(p: u32) -> Result<Prime, CliError> {
    Prime::new(p).map_err(|e| CliError::Config(e.to_string()))
}

fn choice(seed: Option<u64>) -> AutChoice {
    seed.map_or(AutChoice::First, AutChoice::Seeded)
}

pub fn expander(max_level: usize, spectral_max: usize, cap: usize, export: Option<&Path>) -> Result<Output, CliError> {
    let mut levels = Vec::new();
    let mut failure = None;
    for level in 0..=max_level {
        match level_report(level, cap, level <= spectral_max) {
            Ok(r) => levels.push(r),
            Err(e) => {
                let e = CliError::from(e);
                log::warn!("stopping at level {level}: {e}");
                failure = Some(e);
                break;
            }
        }
        if let Some(dir) = export {
            fs::create_dir_all(dir).map_err(|e| CliError::Config(format!("{}: {e}", dir.display())))?;
            let l = build_level(level, cap)?;
            for (tag, cay) in [("two", &l.two), ("four", &l.four)] {
                let file = EdgeListFile { graph: cay.graph.clone(), s: Vec::new(), t: Vec::new() };
                let path = dir.join(format!("level{level}_{tag}.edges"));
                fs::write(&path, write_edge_list(&file)).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            }
        }
    }
    let stopped = failure.as_ref().map(|e: &CliError| e.to_string());
    Ok((json!({ "p": 3, "levels": levels, "stopped": stopped }), failure))
}

pub fn presentation(p: u32, alpha: u32, beta: u32, match_file: Option<&Path>) -> Result<Output, CliError> {
    let pr = prime(p)?;
    let field = QuadField::standard(pr).map_err(|e| CliError::Config(e.to_string()))?;
    let delta = match match_file {
        None => find_generator_delta(field),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            let words: Vec<RelationWord> = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .filter(|l| !l.is_empty())
                .map(RelationWord::parse)
                .collect::<Result<_, _>>()?;
            match search_delta_matching(pr, alpha, beta, &words)? {
                Some(d) => d,
                None => return Err(CliError::Mismatch("no generator reproduces these relations".into())),
            }
        }
    };
    let pres = build_presentation(pr, alpha, beta, delta)?;
    let v: Value = serde_json::from_str(&pres.to_json()).expect("presentation JSON");
    Ok((v, None))
}

#[derive(Serialize)]
struct GraphIndicator {
    property: GraphProperty,
    vertices: usize,
    edges: usize,
    integer_value: String,
    residues: std::collections::BTreeMap<u32, u32>,
}

pub fn indicator(
    property: GraphProperty,
    m: Option<usize>,
    graph: Option<&Path>,
    moduli: &[u32],
    cap: u128,
    breakdown: bool,
    verify: bool,
) -> Result<Output, CliError> {
    for &p in moduli {
        prime(p)?;
    }
    if let Some(path) = graph {
        let g = read_graph(path)?.graph;
        let v = indicator_bruteforce(property, &g, cap)?;
        let residues = moduli.iter().map(|&p| (p, residue(&v, p))).collect();
        let out = GraphIndicator { property, vertices: g.n(), edges: g.edge_count(), integer_value: v.to_string(), residues };
        return Ok((to_value(out), None));
    }
    let m = m.ok_or_else(|| CliError::Config("either --m or --graph is required".into()))?;
    let value = fixed_point_indicator(property, m, cap)?;
    let breakdown = if breakdown { Some(basegraph_class_table(property, m)?) } else { None };
    let mut failure = None;
    if verify {
        if m > 6 {
            return Err(CliError::Config("--verify enumerates block lists and supports m <= 6".into()));
        }
        let o = oracle::fixed_point_indicator(property, m);
        if value != o.into() {
            failure = Some(CliError::Mismatch(format!("oracle gives {o}, fast path {value}")));
        }
    }
    let residues = moduli.iter().map(|&p| (p, residue(&value, p))).collect();
    let report = IndicatorReport { property, m, integer_value: value, residues, breakdown };
    Ok((to_value(report), failure))
}

fn parse_colouring(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Config(format!("bad colour '{s}'"))))
        .collect()
}

pub fn homcount(
    pattern: &Path,
    host: &Path,
    p: Option<u32>,
    seed: Option<u64>,
    colouring: Option<&str>,
    verify: bool,
) -> Result<Output, CliError> {
    let h = read_graph(pattern)?;
    let g = read_graph(host)?;
    let labelled = !(h.s.is_empty() && h.t.is_empty() && g.s.is_empty() && g.t.is_empty());
    let mut out = json!({
        "pattern_vertices": h.graph.n(),
        "host_vertices": g.graph.n(),
        "labelled": labelled,
    });
    let j = TwoLabelledGraph::new(h.graph.clone(), h.s.clone(), h.t.clone())?;
    let gl = TwoLabelledGraph::new(g.graph.clone(), g.s.clone(), g.t.clone())?;
    let computed: u128;
    match p {
        Some(p) => {
            prime(p)?;
            if labelled {
                computed = count_homs_labelled(&j, &gl, Arith::Mod(p as u64))?;
                out["p"] = json!(p);
                out["residue"] = json!(computed);
            } else {
                let r = count_homs_mod_p(&h.graph, &g.graph, p, choice(seed))?;
                computed = r.residue as u128;
                out["p"] = json!(p);
                out["residue"] = json!(r.residue);
                out["width_used"] = json!(r.width_used);
                out["quotient_sequence"] = json!(r.quotient_sequence);
                out["quotient"] = to_value(&r.quotient);
            }
        }
        None => {
            computed = if labelled { count_homs_labelled(&j, &gl, Arith::Exact)? } else { count_homs(&h.graph, &g.graph)? };
            out["count"] = json!(computed.to_string());
        }
    }
    if let Some(text) = colouring {
        let gc = HColouredGraph::new(g.graph.clone(), parse_colouring(text)?, &h.graph)?;
        out["colour_prescribed"] = json!(count_cp_homs(&h.graph, &gc)?.to_string());
        out["colourful"] = json!(count_colourful_homs(&h.graph, &gc)?.to_string());
    }
    let mut failure = None;
    if verify {
        let maps = (g.graph.n() as f64).powi(h.graph.n() as i32);
        if maps > oracle::MAX_BRUTE_MAPS as f64 {
            return Err(CliError::Cap(format!("brute force would try {maps:.0} maps")));
        }
        let full = oracle::hom_count_labelled(&h.graph, &h.s, &h.t, &g.graph, &g.s, &g.t);
        let want = p.map_or(full, |p| full % p as u128);
        out["verified"] = json!(want == computed);
        if want != computed {
            failure = Some(CliError::Mismatch(format!("brute force gives {want}, computed {computed}")));
        }
    }
    Ok((out, failure))
}

pub fn pathcycle(
    mode: Mode,
    k: usize,
    graph: &Path,
    s: Option<usize>,
    t: Option<usize>,
    explain: bool,
    verify: bool,
) -> Result<Output, CliError> {
    let file = read_graph(graph)?;
    let g = &file.graph;
    let mut out = json!({ "mode": format!("{mode:?}").to_lowercase(), "k": k, "vertices": g.n() });
    let (parity, brute) = match mode {
        Mode::Path => (path_parity(g, k)?, verify.then(|| oracle::count_k_paths(g, k))),
        Mode::Cycle => (cycle_parity(g, k)?, verify.then(|| oracle::count_k_cycles(g, k))),
        Mode::Stpath => {
            let s = s.or(file.s.first().copied()).ok_or_else(|| CliError::Config("--s or an S header is required".into()))?;
            let t = t.or(file.t.first().copied()).ok_or_else(|| CliError::Config("--t or a T header is required".into()))?;
            out["s"] = json!(s);
            out["t"] = json!(t);
            let parity = if explain {
                let r = st_path_parity_explained(g, s, t, k)?;
                out["explain"] = to_value(&r);
                r.parity
            } else {
                st_path_parity(g, s, t, k)?
            };
            (parity, verify.then(|| oracle::count_st_paths(g, s, t, k)))
        }
    };
    out["parity"] = json!(parity);
    let mut failure = None;
    if let Some(count) = brute {
        out["enumerated_count"] = json!(count.to_string());
        if (count % 2) as u8 != parity {
            failure = Some(CliError::Mismatch(format!("enumeration gives {count}, parity {parity}")));
        }
    }
    Ok((out, failure))
}

pub fn reduce(pattern: &Path, p: u32, seed: Option<u64>) -> Result<Output, CliError> {
    prime(p)?;
    let h = read_graph(pattern)?;
    let r = p_reduced_quotient(&h.graph.to_multigraph(), p, choice(seed), DEFAULT_SEARCH_BUDGET)?;
    let mut out = to_value(&r);
    out["has_loop"] = json!(r.has_loop());
    out["p"] = json!(p);
    Ok((out, None))
}

pub fn selftest(
    criteria: &[usize],
    seed: u64,
    max_level: usize,
    closure_cap: usize,
    fracture_cap: u128,
) -> Result<Output, CliError> {
    let ids: Vec<usize> = if criteria.is_empty() { (1..=CRITERIA).collect() } else { criteria.to_vec() };
    if let Some(bad) = ids.iter().find(|&&i| !(1..=CRITERIA).contains(&i)) {
        return Err(CliError::Config(format!("no criterion {bad}; they run 1..={CRITERIA}")));
    }
    let cfg = SelftestConfig { seed, max_level, closure_cap, fracture_cap, ..SelftestConfig::default() };
    let results: Vec<_> = ids.iter().map(|&id| run_criterion(id, &cfg)).collect();
    for r in &results {
        eprintln!("[{}] {:>2} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.name, r.detail);
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    let failure = (!failed.is_empty()).then(|| CliError::Mismatch(format!("criteria {failed:?} failed")));
    let out = json!({
        "results": results,
        "failed": failed,
        "known_unattainable": KNOWN_UNATTAINABLE,
    });
    Ok((out, failure))
}
