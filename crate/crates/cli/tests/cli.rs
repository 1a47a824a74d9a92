use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use zx_core::sharp::{sharp, SharpParams};
use zx_core::Diagram;

fn diagram(name: &str) -> String {
    format!("{}/../../diagrams/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn zx(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_zx")).args(args).output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap(), String::from_utf8(o.stderr).unwrap())
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("zx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn eval_prints_the_phase_on_the_diagonal() {
    let (code, out, _) = zx(&["eval", &diagram("rz11.zx.json"), "--exact"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows, vec![vec!["1", "0"], vec!["0", "ζ8^1"]]);
    let (code, out, _) = zx(&["eval", &diagram("rz11.zx.json"), "--float", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"][1][1], "0.707107+0.707107i");
}

#[test]
fn non_dyadic_phases_need_float() {
    let p = scratch(
        "third.zx.json",
        r#"{"inputs":[0],"outputs":[0],"vertices":{"0":{"kind":"Z","phase":{"num":1,"den":3}}},
            "wires":[[{"in":0},{"v":0}],[{"v":0},{"out":0}]]}"#,
    );
    let (code, _, err) = zx(&["eval", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("not a dyadic"), "{err}");
    let (code, out, _) = zx(&["eval", p.to_str().unwrap(), "--float"]);
    assert_eq!(code, 0);
    assert!(out.contains("0.500000+0.866025i"), "{out}");
}

#[test]
fn witness_at_quarter_pi() {
    let (code, out, _) = zx(&["witness", "--alpha", "1/4"]);
    assert_eq!(code, 0);
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("UNEQUAL") && last.ends_with("supp_gap = 2+2i"), "{out}");
    let (code, out, _) = zx(&["witness", "--alpha", "1/2", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "EQUAL");
    assert_eq!(v["supp_gap"], "0");
}

#[test]
fn corrupted_rule_file_is_named() {
    let (code, _, err) = zx(&["check-rules", "--rules", &diagram("corrupted-rules.json")]);
    assert_eq!(code, 1);
    assert!(err.contains("pi-copy-no-scalar") && !err.contains("pi-copy,"), "{err}");
    let (code, out, _) = zx(&["check-rules", "--rules", &diagram("extra-rules.json"), "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["rules"].as_array().unwrap().len() > 14);
    assert_eq!(v["failing"].as_array().unwrap().len(), 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(zx(&["frobnicate"]).0, 2);
    assert_eq!(zx(&["witness", "--alpha", "a/b"]).0, 2);
    assert_eq!(zx(&["eval", "/nonexistent.zx.json"]).0, 2);
    assert_eq!(zx(&["suppgap", "--grid", "6"]).0, 2);
    let p = scratch("broken.zx.json", r#"{"inputs":[0],"outputs":[],"wires":[]}"#);
    assert_eq!(zx(&["eval", p.to_str().unwrap()]).0, 2);
    assert_eq!(zx(&["--help"]).0, 0);
}

#[test]
fn twins_need_sup_outside_the_fusion_case() {
    let d = diagram("twins-hadamard.zx.json");
    let (code, out, _) = zx(&["twins", &d]);
    assert_eq!(code, 0);
    assert!(out.contains("Hadamard"), "{out}");
    let (code, _, err) = zx(&["twins", &d, "--merge", "--no-sup"]);
    assert_eq!(code, 1);
    assert!(err.contains("supplementarity"), "{err}");
    let out_path = scratch("merged.json", "");
    let (code, _, _) = zx(&["twins", &d, "--merge", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let cert = out_path.with_extension("cert.json");
    let (code, out, _) = zx(&["verify", cert.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("SUP LR"));
    assert_eq!(zx(&["verify", cert.to_str().unwrap(), "--no-sup"]).0, 1);
    let merged = Diagram::from_json(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let (code, out, _) = zx(&["twins", out_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "no antiphase twins");
    assert!(merged.num_vertices() > 0);
}

#[test]
fn scripts_verify_or_fail() {
    let (code, out, _) = zx(&["verify", &diagram("fuse.script.json")]);
    assert_eq!((code, out.lines().last().unwrap()), (0, "VERIFIED 1 steps"));
    let bad = std::fs::read_to_string(diagram("fuse.script.json")).unwrap().replace("[0, 1]", "[0, 7]");
    let p = scratch("bad.script.json", &bad);
    let (code, _, err) = zx(&["verify", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("step 0"), "{err}");
}

#[test]
fn rewrite_applies_one_step() {
    let s = std::fs::read_to_string(diagram("fuse.script.json")).unwrap();
    let start: Value = serde_json::from_str(&s).unwrap();
    let p = scratch("chain.zx.json", &start["start"].to_string());
    let (code, out, _) = zx(&["rewrite", p.to_str().unwrap(), "--rule", "S1", "--at", "0,1"]);
    assert_eq!(code, 0);
    let d = Diagram::from_json(&out).unwrap();
    assert_eq!(d.num_vertices(), 1);
    let (code, out, _) = zx(&["eval", p.to_str().unwrap()]);
    let (_, out2, _) = zx(&["eval", &diagram("rz11.zx.json")]);
    assert_eq!(code, 0);
    assert_ne!(out, out2);
    assert_eq!(zx(&["rewrite", p.to_str().unwrap(), "--rule", "K2"]).0, 1);
    assert_eq!(zx(&["rewrite", p.to_str().unwrap(), "--rule", "NOPE"]).0, 2);
}

#[test]
fn sharp_matches_the_library() {
    let (code, out, _) = zx(&["sharp", &diagram("supp-lhs.zx.json"), "--k", "3", "--l", "2"]);
    assert_eq!(code, 0);
    let d = Diagram::from_json(&std::fs::read_to_string(diagram("supp-lhs.zx.json")).unwrap()).unwrap();
    assert_eq!(Diagram::from_json(&out).unwrap(), sharp(&d, SharpParams::SHARP));
    let (code, _, _) = zx(&["sharp", &diagram("supp-lhs.zx.json"), "--k", "1", "--l", "-1", "--simplify"]);
    assert_eq!(code, 0);
}

#[test]
fn tables() {
    let (code, out, _) = zx(&["suppgap", "--grid", "8"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 17);
    assert_eq!(out.lines().filter(|l| l.ends_with("yes")).count(), 4);
    let (code, out, _) = zx(&["scan", "--kmax", "2", "--lrange", "-1..0", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 4);
    let (code, out, _) = zx(&["lemmas", "--alpha", "3/8"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("ok")).count(), 12);
}
