//! The acceptance battery. Each criterion recomputes its values from scratch
//! and compares them with fixed expectations or with the brute-force oracle.

use std::time::Instant;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Mat3, Prime};
use crate::expander::level_report;
use crate::fractures::{
    basegraph_class_table, cayley_tree_identity_check, count_partitions_by_basegraph_class, covering_check,
    fixed_point_indicator, fixed_point_indicator_with_pairing, indicator_bruteforce, residue, GraphProperty,
    DEFAULT_FRACTURE_CAP,
};
use crate::fractures::all_basegraph_classes;
use crate::graph::Graph;
use crate::groups::{cayley_graph, closure, CayleyGraph, DEFAULT_CLOSURE_CAP};
use crate::homcount::{count_homs_mod_p, p_reduced_quotient, AutChoice, DEFAULT_SEARCH_BUDGET};
use crate::oracle;
use crate::pathcycle::{
    cycle_parity, cycle_parity_with_order, path_parity, quotient_family, st_path_count_full_mobius, st_path_parity,
};
use crate::presentations::{p3_matrix_generators, p3_relations, p3_rename_to_lattice, search_delta_matching, RelationWord};

pub const CRITERIA: usize = 11;

/// Criteria whose expected values are not reproduced by the implementation.
/// They still run and report FAIL; see `forest_residues` for what they give.
pub const KNOWN_UNATTAINABLE: &[usize] = &[3];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Deepest p = 3 level whose group is built.
    pub max_level: usize,
    /// Deepest level whose spectrum is computed.
    pub spectral_max_level: usize,
    pub closure_cap: usize,
    pub fracture_cap: u128,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            seed: 0x5eed,
            max_level: 6,
            spectral_max_level: crate::expander::DEFAULT_SPECTRAL_MAX_LEVEL,
            closure_cap: DEFAULT_CLOSURE_CAP,
            fracture_cap: DEFAULT_FRACTURE_CAP,
        }
    }
}

pub fn criterion_name(id: usize) -> &'static str {
    match id {
        1 => "bipartite fixed-point breakdown for m = 3",
        2 => "bipartite fixed-point values for m = 2..6",
        3 => "forest fixed-point residues at m = p - 2",
        4 => "partition counts per base graph class",
        5 => "labelled tree count from automorphisms",
        6 => "p = 3 congruence quotient tower",
        7 => "relation search for p = 5 and p = 3",
        8 => "fractured Cayley graphs against base graphs",
        9 => "brute-force indicator against fixed points",
        10 => "path, cycle and st-path parities",
        11 => "homomorphism residues through reduced quotients",
        _ => "unknown",
    }
}

pub fn run_criterion(id: usize, cfg: &SelftestConfig) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => c1_breakdown(cfg),
        2 => c2_bipartite_values(cfg),
        3 => c3_forest_residues(cfg),
        4 => c4_class_counts(),
        5 => c5_tree_identity(),
        6 => c6_tower(cfg),
        7 => c7_relation_search(),
        8 => c8_covering(cfg),
        9 => c9_bruteforce(cfg),
        10 => c10_pathcycle(cfg),
        11 => c11_homcount(cfg),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id, name: criterion_name(id), passed, detail, elapsed_ms: start.elapsed().as_millis() }
}

pub fn run_all(cfg: &SelftestConfig) -> Vec<CriterionResult> {
    (1..=CRITERIA).map(|id| run_criterion(id, cfg)).collect()
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_breakdown(cfg: &SelftestConfig) -> Outcome {
    let v = fixed_point_indicator(GraphProperty::Bipartite, 3, cfg.fracture_cap).map_err(|e| e.to_string())?;
    ensure(v == BigInt::from(-16), || format!("value {v}, expected -16"))?;
    let rows = basegraph_class_table(GraphProperty::Bipartite, 3).map_err(|e| e.to_string())?;
    let got: Vec<(u128, usize, i128)> = rows.iter().map(|r| (r.count, r.blocks, r.contribution)).collect();
    let want: Vec<(u128, usize, i128)> = vec![
        (1, 6, -120),
        (12, 5, 288),
        (24, 4, -144),
        (8, 4, -48),
        (6, 4, -36),
        (24, 3, 48),
        (4, 2, -4),
    ];
    ensure(got == want, || format!("rows {got:?}"))?;
    Ok(format!("value -16, {} classes match", rows.len()))
}

const BIPARTITE_VALUES: [(usize, i64); 5] = [(2, 0), (3, -16), (4, 192), (5, -16576), (6, 1109760)];

fn c2_bipartite_values(cfg: &SelftestConfig) -> Outcome {
    let mut out = Vec::new();
    for (m, want) in BIPARTITE_VALUES {
        let v = fixed_point_indicator(GraphProperty::Bipartite, m, cfg.fracture_cap).map_err(|e| e.to_string())?;
        ensure(v == BigInt::from(want), || format!("m={m}: {v}, expected {want}"))?;
        if m <= 5 {
            let o = oracle::fixed_point_indicator(GraphProperty::Bipartite, m);
            ensure(o == want as i128, || format!("m={m}: oracle gives {o}"))?;
        }
        out.push(v.to_string());
    }
    Ok(format!("values {}", out.join(", ")))
}

/// Forest fixed-point residues mod 5 at m = 3 and mod 7 at m = 5.
pub fn forest_residues(cap: u128) -> Result<(u32, u32), String> {
    let v3 = fixed_point_indicator(GraphProperty::Forest, 3, cap).map_err(|e| e.to_string())?;
    let v5 = fixed_point_indicator(GraphProperty::Forest, 5, cap).map_err(|e| e.to_string())?;
    Ok((residue(&v3, 5), residue(&v5, 7)))
}

fn c3_forest_residues(cfg: &SelftestConfig) -> Outcome {
    let (r5, r7) = forest_residues(cfg.fracture_cap)?;
    for (m, o) in [(3, -24i128), (5, -40320)] {
        let v = oracle::fixed_point_indicator(GraphProperty::Forest, m);
        ensure(v == o, || format!("m={m}: oracle gives {v}, enumeration {o}"))?;
    }
    let detail = format!("residues {r5} mod 5 and {r7} mod 7 (expected 4 and 4)");
    if r5 == 4 && r7 == 4 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c4_class_counts() -> Outcome {
    let mut classes = 0;
    for m in 1..=4 {
        for row in all_basegraph_classes(GraphProperty::Bipartite, m).map_err(|e| e.to_string())? {
            ensure(row.count == row.formula_count, || format!("m={m}: class count {} vs {}", row.count, row.formula_count))?;
            let c = count_partitions_by_basegraph_class(&row.representative, m).map_err(|e| e.to_string())?;
            ensure(c.enumerated == c.formula, || format!("m={m}: {c:?}"))?;
            classes += 1;
        }
    }
    Ok(format!("{classes} classes for m = 1..4"))
}

fn c5_tree_identity() -> Outcome {
    for n in 1..=8 {
        let t = cayley_tree_identity_check(n);
        ensure(t.holds, || format!("n={n}: {:?} vs {:?}", t.lhs, t.rhs))?;
    }
    Ok("holds for n = 1..8".into())
}

fn level_zero_matrices_exact() -> bool {
    let p = Prime::new(3).expect("3 is prime");
    let a1 = Mat3::from_ints(p, 0, [[1, -1, -1], [-1, -1, 0], [-1, 0, 0]]);
    let a34 = Mat3::from_ints(p, 0, [[0, 0, -1], [0, -1, 1], [-1, 1, 1]]);
    let g = p3_matrix_generators(0);
    g[0] == a1 && g[1].is_identity() && g[2] == a34 && g[3] == a34
}

fn c6_tower(cfg: &SelftestConfig) -> Outcome {
    ensure(level_zero_matrices_exact(), || "level 0 matrices differ".into())?;
    let mut prev: Option<(usize, [u64; 4])> = None;
    let mut orders = Vec::new();
    for level in 0..=cfg.max_level {
        let r = match level_report(level, cfg.closure_cap, level <= cfg.spectral_max_level) {
            Ok(r) => r,
            Err(e) => {
                log::info!("tower stops at level {level}: {e}");
                break;
            }
        };
        ensure(r.exponent.is_some(), || format!("level {level}: order {} is not a power of 3", r.group_order))?;
        ensure(r.relations_hold, || format!("level {level}: relations fail"))?;
        if level == 0 {
            ensure(r.group_order == 3, || format!("level 0 has order {}", r.group_order))?;
        }
        if let Some((o, e)) = prev {
            ensure(r.group_order > o, || format!("level {level}: order {} not above {o}", r.group_order))?;
            ensure(r.element_orders.iter().zip(e).all(|(a, b)| *a >= b), || {
                format!("level {level}: element orders {:?} after {e:?}", r.element_orders)
            })?;
        }
        for s in [&r.two_generators, &r.four_generators].into_iter().flatten() {
            ensure(s.mu1 > 1e-9, || format!("level {level}: gap {}", s.mu1))?;
        }
        prev = Some((r.group_order, r.element_orders));
        orders.push(r.group_order.to_string());
    }
    ensure(orders.len() >= 2, || "fewer than two levels computed".into())?;
    Ok(format!("orders {}", orders.join(", ")))
}

pub const P5_RELATIONS: [&str; 9] = [
    "a0 b2 a0 b10",
    "a0 b6 a0^-1 b6^-1",
    "a0 b2^-1 a4^-1 b2^-1",
    "a0 b10^-1 a8 b10^-1",
    "a4 b6 a4 b2^-1",
    "a4 b10 a4^-1 b10^-1",
    "a4 b6^-1 a8^-1 b6^-1",
    "a8 b2 a8^-1 b2^-1",
    "a8 b10 a8 b6^-1",
];

fn c7_relation_search() -> Outcome {
    let words: Vec<RelationWord> =
        P5_RELATIONS.iter().map(|s| RelationWord::parse(s)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let p5 = Prime::new(5).expect("prime");
    let d5 = search_delta_matching(p5, 0, 2, &words).map_err(|e| e.to_string())?.ok_or("no delta for p = 5")?;
    let renamed: Vec<RelationWord> = p3_relations().iter().map(|w| p3_rename_to_lattice(w)).collect();
    let p3 = Prime::new(3).expect("prime");
    let d3 = search_delta_matching(p3, 0, 1, &renamed).map_err(|e| e.to_string())?.ok_or("no delta for p = 3")?;
    Ok(format!("p=5 delta {:?}, p=3 delta {:?}", d5.coords(), d3.coords()))
}

/// Cyclic p-groups generated by a unipotent matrix over F_p.
fn cyclic_cayley(p: u32, steps: &[u64]) -> Result<CayleyGraph, String> {
    let pr = Prime::new(p).map_err(|e| e.to_string())?;
    let u = Mat3::from_ints(pr, 0, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
    let group = closure(std::slice::from_ref(&u), 64).map_err(|e| e.to_string())?;
    let gens: Vec<Mat3> = steps.iter().map(|&s| u.pow(s)).collect();
    cayley_graph(&group, &gens).map_err(|e| e.to_string())
}

/// Cayley graphs small enough for the covering and brute-force checks.
pub fn small_cayley_graphs(cfg: &SelftestConfig) -> Result<Vec<(String, CayleyGraph)>, String> {
    let mut out = Vec::new();
    for level in 0..=2 {
        let gens = p3_matrix_generators(level);
        let group = closure(&gens, cfg.closure_cap).map_err(|e| e.to_string())?;
        let two = cayley_graph(&group, &gens[1..3]).map_err(|e| e.to_string())?;
        let four = cayley_graph(&group, &gens).map_err(|e| e.to_string())?;
        out.push((format!("level {level}, two generators"), two));
        out.push((format!("level {level}, four generators"), four));
    }
    out.push(("Z/5, {g}".into(), cyclic_cayley(5, &[1])?));
    out.push(("Z/5, {g, g^2}".into(), cyclic_cayley(5, &[1, 2])?));
    out.push(("Z/7, {g}".into(), cyclic_cayley(7, &[1])?));
    let v1 = p3_matrix_generators(2)[2].clone();
    let sub = closure(std::slice::from_ref(&v1), cfg.closure_cap).map_err(|e| e.to_string())?;
    out.push(("<v1> in level 2".into(), cayley_graph(&sub, &[v1]).map_err(|e| e.to_string())?));
    Ok(out)
}

fn c8_covering(cfg: &SelftestConfig) -> Outcome {
    let graphs = small_cayley_graphs(cfg)?;
    let mut checked = 0u128;
    for (name, cay) in &graphs {
        if cay.graph.n() > 200 || cay.collapsed_edges > 0 {
            continue;
        }
        for phi in [GraphProperty::Forest, GraphProperty::Bipartite] {
            let r = covering_check(cay, phi, cfg.fracture_cap).map_err(|e| format!("{name}: {e}"))?;
            ensure(r.mismatches.is_empty(), || format!("{name}, {phi:?}: {} mismatches", r.mismatches.len()))?;
            checked += r.partitions;
        }
    }
    Ok(format!("{checked} partitions over {} graphs, no mismatches", graphs.len()))
}

fn c9_bruteforce(cfg: &SelftestConfig) -> Outcome {
    let mut done = 0;
    for (name, cay) in small_cayley_graphs(cfg)? {
        let n = cay.graph.n();
        if n > 9 || cay.collapsed_edges > 0 {
            continue;
        }
        let p = [3u32, 5, 7].into_iter().find(|&q| n % q as usize == 0).ok_or("not a p-group")?;
        for phi in GraphProperty::ALL {
            let full = indicator_bruteforce(phi, &cay.graph, u128::MAX).map_err(|e| format!("{name}: {e}"))?;
            let fixed = fixed_point_indicator_with_pairing(phi, &cay.inverse_slot, cfg.fracture_cap)
                .map_err(|e| format!("{name}: {e}"))?;
            ensure(residue(&full, p) == residue(&fixed, p), || {
                format!("{name}, {phi:?}: {full} vs fixed point {fixed} mod {p}")
            })?;
            done += 1;
        }
    }
    Ok(format!("{done} graph/property pairs agree"))
}

fn random_instance(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(3..=10);
    let density = rng.gen_range(0.25..0.7);
    oracle::random_graph(rng, n, density)
}

fn c10_pathcycle(cfg: &SelftestConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 10);
    let err = |e: crate::pathcycle::PathCycleError| e.to_string();
    for k in 1..=9 {
        let fam = quotient_family(k).map_err(err)?;
        ensure(fam.max_degree <= 4, || format!("k={k}: quotient degree {}", fam.max_degree))?;
    }
    let mut instances = [0usize; 3];
    while instances[0] < 100 {
        let g = random_instance(&mut rng);
        let k = rng.gen_range(1..=8);
        let s = rng.gen_range(0..g.n());
        let t = (s + rng.gen_range(1..g.n())) % g.n();
        let want = (oracle::count_st_paths(&g, s, t, k) % 2) as u8;
        let got = st_path_parity(&g, s, t, k).map_err(err)?;
        ensure(got == want, || format!("st-path k={k} on {:?}: {got} vs {want}", g.edges()))?;
        if k <= 6 {
            let full = st_path_count_full_mobius(&g, s, t, k).map_err(err)?;
            ensure(full.rem_euclid(2) as u8 == got, || format!("full Möbius parity differs at k={k}"))?;
        }
        instances[0] += 1;
    }
    while instances[1] < 100 {
        let g = random_instance(&mut rng);
        let k = rng.gen_range(3..=8);
        let want = (oracle::count_k_cycles(&g, k) % 2) as u8;
        let got = cycle_parity(&g, k).map_err(err)?;
        ensure(got == want, || format!("cycle k={k} on {:?}: {got} vs {want}", g.edges()))?;
        let mut order: Vec<usize> = (0..g.edge_count()).collect();
        order.shuffle(&mut rng);
        let shuffled = cycle_parity_with_order(&g, k, &order).map_err(err)?;
        ensure(shuffled == want, || format!("cycle k={k}: edge order changes the parity"))?;
        instances[1] += 1;
    }
    while instances[2] < 100 {
        let g = random_instance(&mut rng);
        let k = rng.gen_range(1..=8);
        let want = (oracle::count_k_paths(&g, k) % 2) as u8;
        let got = path_parity(&g, k).map_err(err)?;
        ensure(got == want, || format!("path k={k} on {:?}: {got} vs {want}", g.edges()))?;
        instances[2] += 1;
    }
    Ok(format!("{} st-path, {} cycle, {} path instances agree", instances[0], instances[1], instances[2]))
}

/// Patterns with plenty of symmetry, plus random ones.
fn random_pattern(rng: &mut ChaCha8Rng) -> Graph {
    match rng.gen_range(0..6) {
        0 => Graph::cycle(rng.gen_range(3..=6)),
        1 => Graph::matching(rng.gen_range(1..=3)),
        2 => Graph::complete(rng.gen_range(1..=4)),
        3 => {
            let leaves = rng.gen_range(1..=5);
            Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star")
        }
        4 => Graph::path(rng.gen_range(1..=5)),
        _ => {
            let n = rng.gen_range(1..=6);
            oracle::random_graph(rng, n, 0.4)
        }
    }
}

fn c11_homcount(cfg: &SelftestConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 11);
    let err = |e: crate::homcount::HomError| e.to_string();
    let mut checked = 0;
    for i in 0..210 {
        let p = [2u32, 3, 5][i % 3];
        let h = random_pattern(&mut rng);
        let gn = rng.gen_range(1..=6);
        let density = rng.gen_range(0.3..0.8);
        let g = oracle::random_graph(&mut rng, gn, density);
        let want = (oracle::hom_count(&h, &g) % p as u128) as u32;
        let got = count_homs_mod_p(&h, &g, p, AutChoice::First).map_err(err)?;
        ensure(got.residue == want, || format!("p={p}, H={:?}, G={:?}: {} vs {want}", h.edges(), g.edges(), got.residue))?;
        checked += 1;
    }
    let c4 = Graph::cycle(4);
    let red = p_reduced_quotient(&c4.to_multigraph(), 2, AutChoice::First, DEFAULT_SEARCH_BUDGET).map_err(err)?;
    ensure(red.has_loop() && red.quotient.n() == 1, || format!("C4 reduces to {:?}", red.quotient))?;
    for _ in 0..20 {
        let n = rng.gen_range(2..=9);
        let g = oracle::random_graph(&mut rng, n, 0.5);
        let r = count_homs_mod_p(&c4, &g, 2, AutChoice::First).map_err(err)?;
        ensure(r.residue == 0, || format!("C4 residue {} on {:?}", r.residue, g.edges()))?;
        ensure(oracle::hom_count(&c4, &g).is_multiple_of(2), || "oracle gives an odd C4 count".into())?;
    }
    let mut pairs = 0;
    for i in 0..40 {
        let p = [2u32, 3, 5][i % 3];
        let h = random_pattern(&mut rng).to_multigraph();
        let s1 = rng.gen::<u64>();
        let s2 = rng.gen::<u64>();
        let a = p_reduced_quotient(&h, p, AutChoice::Seeded(s1), DEFAULT_SEARCH_BUDGET).map_err(err)?;
        let b = p_reduced_quotient(&h, p, AutChoice::Seeded(s2), DEFAULT_SEARCH_BUDGET).map_err(err)?;
        ensure(a.quotient.is_isomorphic(&b.quotient), || {
            format!("p={p}, H={:?}: {:?} vs {:?}", h.edges(), a.quotient, b.quotient)
        })?;
        pairs += 1;
    }
    Ok(format!("{checked} residues, C4 loop and 20 hosts, {pairs} reduction pairs agree"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_cover_every_criterion() {
        assert!((1..=CRITERIA).all(|i| criterion_name(i) != "unknown"));
    }

    #[test]
    fn fast_criteria_pass() {
        let cfg = SelftestConfig::default();
        for id in [1, 4, 5, 7] {
            let r = run_criterion(id, &cfg);
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}
