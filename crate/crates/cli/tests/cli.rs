use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn twistcube(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistcube")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let o = twistcube(dir, args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn gen_then_info() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "--model", "duplicube", "--n", "10", "--seed", "7", "--out", "g.json"]);
    let info = ok(d, &["info", "g.json"]);
    assert!(info.contains("n: 10\n"), "{info}");
    assert!(info.contains("vertices: 1024\n"));
    assert!(info.contains("degree: 10\n"));
    let json: serde_json::Value = serde_json::from_str(&ok(d, &["info", "g.json", "--format", "json"])).unwrap();
    assert_eq!(json["edges"], 5120);
}

#[test]
fn manifest_round_trip_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("base.json"), r#"{"vertex_count": 3, "edges": [[2, 1], [0, 1]]}"#).unwrap();
    ok(d, &["gen", "--model", "independent", "--n", "4", "--seed", "18446744073709551615", "--base", "base.json", "-o", "a.json"]);
    ok(d, &["gen", "--model", "duplicube", "--n", "5", "--seed", "3", "--out", "b.json", "--tables", "t.json"]);
    ok(d, &["gen", "--model", "explicit", "--n", "5", "--permutations", "t.json", "--out", "c.json"]);
    for name in ["a.json", "b.json", "c.json"] {
        let bytes = fs::read_to_string(d.join(name)).unwrap();
        let again = twistcube::Manifest::load(&d.join(name)).unwrap();
        assert_eq!(again.to_json(), bytes, "{name}");
        let spec = again.to_spec().unwrap();
        assert_eq!(twistcube::Manifest::from_spec(&spec).to_json(), bytes, "{name}");
    }
}

#[test]
fn explicit_tables_reproduce_the_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "--model", "independent", "--n", "6", "--seed", "11", "-o", "r.json", "--edges", "r.txt", "--tables", "t.json"]);
    ok(d, &["gen", "--model", "explicit", "--n", "6", "--permutations", "t.json", "-o", "e.json", "--edges", "e.txt"]);
    let a = fs::read_to_string(d.join("r.txt")).unwrap();
    assert_eq!(a, fs::read_to_string(d.join("e.txt")).unwrap());
    assert_eq!(a.lines().count(), 6 * 32);
    for line in a.lines() {
        let (u, v) = line.split_once(' ').unwrap();
        assert!(u.parse::<u32>().unwrap() < v.parse::<u32>().unwrap());
    }
}

#[test]
fn dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "--model", "duplicube", "--n", "3", "-o", "g.json", "--edges", "g.dot", "--format", "dot"]);
    let dot = fs::read_to_string(d.join("g.dot")).unwrap();
    assert!(dot.starts_with("graph G3 {"));
    assert_eq!(dot.matches(" -- ").count(), 12);
    let o = twistcube(d, &["gen", "--model", "duplicube", "--n", "9", "-o", "h.json", "--edges", "h.dot", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exact_diameter_is_within_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "--model", "duplicube", "--n", "10", "--seed", "7", "--out", "g.json"]);
    let diam: u32 = ok(d, &["diam", "g.json", "--exact"]).trim().parse().unwrap();
    assert!((3..=10).contains(&diam), "{diam}");
    let bounds = ok(d, &["diam", "g.json"]);
    let parts: Vec<u32> = bounds.split_whitespace().map(|x| x.parse().unwrap()).collect();
    assert!(parts[0] <= diam && parts[1] == 10);
}

#[test]
fn second_moment_is_exactly_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "--model", "duplicube", "--n", "10", "--seed", "7", "--out", "g.json"]);
    let csv = ok(d, &["moments", "g.json", "--kmax", "6"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("k,m_k,catalan,abs_error"));
    assert!(csv.lines().any(|l| l == "2,1.0,1.0,0.0"), "{csv}");
    assert_eq!(csv.lines().count(), 7);
}

#[test]
fn spectrum_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "--model", "duplicube", "--n", "6", "--seed", "1", "-o", "g.json"]);
    let full = ok(d, &["spectrum", "g.json"]);
    assert_eq!(full.lines().count(), 65);
    let lambda1: f64 = full.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((lambda1 - 6.0).abs() < 1e-10);
    let top = ok(d, &["spectrum", "g.json", "--top", "2"]);
    assert!(top.starts_with("index,eigenvalue,residual\n0,6.0,"), "{top}");
    let hist = ok(d, &["spectrum", "g.json", "--histogram", "0"]);
    assert!(hist.starts_with("bin_left,bin_right,mass,semicircle_ref,gaussian_ref"));
    assert_eq!(hist.lines().count(), 8);
}

#[test]
fn route_cut_order_mix_cycles() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "--model", "duplicube", "--n", "4", "--seed", "5", "-o", "g.json"]);
    let route: serde_json::Value = serde_json::from_str(&ok(d, &["route", "g.json", "--from", "0", "--to", "15"])).unwrap();
    assert_eq!(route["path"][0], 0);
    assert!(route["length"].as_u64().unwrap() <= 4);
    let cuts: serde_json::Value = serde_json::from_str(&ok(d, &["matchcut", "g.json"])).unwrap();
    assert!(cuts.as_array().unwrap().iter().any(|c| c["trivial"] == true && c["side"] == "0xff"));
    let order: serde_json::Value = serde_json::from_str(&ok(d, &["order", "g.json"])).unwrap();
    assert_eq!(order["cover_edges"], 32);
    let mix = ok(d, &["mix", "g.json", "--tmax", "5"]);
    assert!(mix.starts_with("t,tv\n0,0.9375\n"), "{mix}");
    let cycles = ok(d, &["cycles", "g.json", "--k", "4", "--vertex", "3"]);
    assert!(cycles.starts_with("vertex,theta\n3,"));
    let aut: serde_json::Value = serde_json::from_str(&ok(d, &["aut", "g.json"])).unwrap();
    assert!(aut["order"].is_string());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(twistcube(d, &["--help"]).status.code(), Some(0));
    assert_eq!(twistcube(d, &["info", "g.json", "--bogus"]).status.code(), Some(1));
    assert_eq!(twistcube(d, &["frobnicate"]).status.code(), Some(1));
    fs::write(d.join("bad.json"), r#"{"model": "duplicube", "n": 3, "colour": 1}"#).unwrap();
    let o = twistcube(d, &["info", "bad.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed manifest"));
    ok(d, &["gen", "--model", "duplicube", "--n", "11", "-o", "big.json"]);
    let o = twistcube(d, &["aut", "big.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1024"));
    assert_eq!(twistcube(d, &["spectrum", "big.json", "--format", "dot"]).status.code(), Some(1));
    assert_eq!(twistcube(d, &["gen", "--model", "cube", "--n", "3", "-o", "c.json"]).status.code(), Some(1));
}

#[test]
fn batch_is_thread_count_independent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let plan = r#"{
        "template": {"model": "independent", "n": 6},
        "seeds": [4, 5, 6],
        "operations": [
            {"op": "info"},
            {"op": "diameter", "exact": true},
            {"op": "route", "pairs": 50},
            {"op": "moments", "kmax": 4},
            {"op": "expansion", "trials": 20}
        ],
        "output_dir": "out"
    }"#;
    fs::write(d.join("plan.json"), plan).unwrap();
    ok(d, &["batch", "plan.json", "--threads", "1"]);
    let one = fs::read(d.join("out/results.csv")).unwrap();
    ok(d, &["batch", "plan.json", "--threads", "3"]);
    assert_eq!(fs::read(d.join("out/results.csv")).unwrap(), one);
    let text = String::from_utf8(one).unwrap();
    assert!(text.starts_with("model,n,seed,metric,value\n"));
    assert!(text.lines().skip(1).all(|l| l.starts_with("independent,6,")));
    // Matching cuts are refused at 64 vertices, so the whole plan fails with the guard code.
    let guarded = plan.replace(r#"{"op": "info"},"#, r#"{"op": "info"}, {"op": "matching_cuts"},"#);
    fs::write(d.join("guarded.json"), guarded).unwrap();
    assert_eq!(twistcube(d, &["batch", "guarded.json"]).status.code(), Some(2));
}
