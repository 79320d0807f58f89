use std::path::PathBuf;
use std::process::{Command, Output};

use modcount::graph::parse_edge_list;
use serde_json::Value;

fn modcount(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_modcount"));
    cmd.args(args).env_remove("MODCOUNT_CLOSURE_CAP").env_remove("MODCOUNT_FRACTURE_CAP");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("modcount-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &std::path::Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn reduce_c4_ends_in_a_loop() {
    let dir = scratch_dir("reduce");
    let c4 = write(&dir, "c4.edges", "# four-cycle\n0 1\n1 2\n2 3\n3 0\n");
    let out = modcount(&["reduce", "--pattern", &c4, "--p", "2"], &[]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["result"]["sequence"], serde_json::json!([4, 2, 1]));
    assert_eq!(v["result"]["has_loop"], true);
}

#[test]
fn homcount_verifies_against_brute_force() {
    let dir = scratch_dir("hom");
    let h = write(&dir, "h.edges", "0 1\n1 2\n2 0\n");
    let g = write(&dir, "g.edges", "0 1\n1 2\n2 3\n3 0\n0 2\n1 3\n3 4\n");
    for p in ["2", "3", "5"] {
        let out = modcount(&["homcount", "--pattern", &h, "--host", &g, "--mod", p, "--verify"], &[]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["result"]["verified"], true);
    }
    let out = modcount(&["homcount", "--pattern", &h, "--host", &g], &[]);
    // K4 has 24 triangle maps, the pendant vertex adds none
    assert_eq!(json(&out)["result"]["count"], "24");
}

#[test]
fn labelled_pathcycle_uses_headers() {
    let dir = scratch_dir("st");
    let g = write(&dir, "g.edges", "S: 0\nT: 3\n0 1\n1 3\n0 2\n2 3\n");
    let out = modcount(&["pathcycle", "--mode", "stpath", "--k", "2", "--graph", &g, "--verify"], &[]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["parity"], 0);
    assert_eq!(v["result"]["enumerated_count"], "2");
}

#[test]
fn exit_codes() {
    let dir = scratch_dir("codes");
    let c4 = write(&dir, "c4.edges", "0 1\n1 2\n2 3\n3 0\n");
    assert_eq!(modcount(&["reduce", "--pattern", "/no/such/file", "--p", "2"], &[]).status.code(), Some(2));
    assert_eq!(modcount(&["reduce", "--pattern", &c4, "--p", "4"], &[]).status.code(), Some(2));
    assert_eq!(modcount(&["indicator", "--property", "tree", "--m", "2"], &[]).status.code(), Some(2));
    assert_eq!(modcount(&["indicator", "--property", "forest", "--m", "9"], &[]).status.code(), Some(3));
    let capped = modcount(&["indicator", "--property", "forest", "--m", "3"], &[("MODCOUNT_FRACTURE_CAP", "10")]);
    assert_eq!(capped.status.code(), Some(3));
    let tower = modcount(&["expander", "--max-level", "3"], &[("MODCOUNT_CLOSURE_CAP", "100")]);
    assert_eq!(tower.status.code(), Some(3));
    assert_eq!(json(&tower)["result"]["levels"].as_array().unwrap().len(), 3);
    // the forest residues are not the advertised ones
    assert_eq!(modcount(&["selftest", "--criterion", "3"], &[]).status.code(), Some(4));
    assert_eq!(modcount(&["selftest", "--criterion", "1", "--criterion", "5"], &[]).status.code(), Some(0));
}

#[test]
fn indicator_breakdown() {
    let out = modcount(&["indicator", "--property", "bipartite", "--m", "3", "--breakdown", "--mod", "5", "--verify"], &[]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["integer_value"], -16);
    assert_eq!(v["result"]["residues"]["5"], 4);
    let counts: Vec<u64> =
        v["result"]["breakdown"].as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [1, 12, 24, 8, 6, 24, 4]);
}

#[test]
fn presentation_match() {
    let dir = scratch_dir("pres");
    let words = modcount::selftest::P5_RELATIONS.join("\n");
    let f = write(&dir, "p5.rel", &words);
    let out = modcount(&["presentation", "--p", "5", "--alpha", "0", "--beta", "2", "--match", &f], &[]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"]["folded"].as_array().unwrap().len(), 9);
}

#[test]
fn exported_cayley_graphs_reparse() {
    let dir = scratch_dir("export");
    let out = modcount(&["expander", "--max-level", "2", "--export", dir.to_str().unwrap()], &[]);
    assert!(out.status.success());
    let levels = &json(&out)["result"]["levels"];
    for level in 0..=2 {
        let text = std::fs::read_to_string(dir.join(format!("level{level}_four.edges"))).unwrap();
        let g = parse_edge_list(&text).unwrap().graph;
        assert_eq!(g.n() as u64, levels[level]["group_order"].as_u64().unwrap());
    }
}

#[test]
fn output_is_deterministic() {
    let dir = scratch_dir("det");
    let h = write(&dir, "h.edges", "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n0 3\n");
    let g = write(&dir, "g.edges", "0 1\n1 2\n2 3\n3 0\n0 2\n");
    let runs: [&[&str]; 3] = [
        &["--compact", "expander", "--max-level", "2"],
        &["--compact", "reduce", "--pattern", &h, "--p", "2", "--seed", "7"],
        &["--compact", "homcount", "--pattern", &h, "--host", &g, "--mod", "3", "--seed", "11"],
    ];
    for args in runs {
        let mut a = json(&modcount(args, &[]));
        let mut b = json(&modcount(args, &[]));
        strip_timing(&mut a);
        strip_timing(&mut b);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap(), "{args:?}");
    }
}
