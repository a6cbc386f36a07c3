use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn zhu(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_zhu")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let src = std::fs::read_to_string(root().join("schemas").join(format!("{name}.schema.json"))).unwrap();
    let v: Value = serde_json::from_str(&src).unwrap();
    jsonschema::JSONSchema::compile(&v).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Runs with `--format json`, checks the exit code and validates the output.
fn json_ok(schema_name: &str, args: &[&str], code: i32) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (c, out, err) = zhu(&a);
    assert_eq!(c, code, "{args:?}: {err}");
    let v: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
    let s = schema(schema_name);
    if let Err(errs) = s.validate(&v) {
        let msgs: Vec<String> = errs.map(|e| e.to_string()).collect();
        panic!("{args:?} does not match {schema_name}: {msgs:?}\n{out}");
    }
    v
}

#[test]
fn star_example() {
    let (c, out, _) = zhu(&["star", "a(-1)|0>", "a(-1)|0>", "--level", "0"]);
    assert_eq!(c, 0);
    assert_eq!(out.trim(), "a(-1)^2|0>");
}

#[test]
fn element_outputs() {
    let v = json_ok("element", &["normalize", "a(-1)a(-2)|0>"], 0);
    assert_eq!(v["element"], "a(-2)a(-1)|0>");
    let v = json_ok("element", &["normalize", "L(1)L(-1)|h>", "-p", "virasoro", "--module", "verma"], 0);
    assert_eq!(v["element"], "(2*h) |h>");
    let v = json_ok("element", &["mode", "0", "a(-1)|0>", "a(-1)|lambda>", "--module", "fock"], 0);
    assert_eq!(v["element"], "(lambda) a(-1)|lambda>");
    json_ok("element", &["circle", "a(-1)|0>", "a(-1)|0>", "-n", "1"], 0);
    let v = json_ok("element", &["star", "|0>", "L(-2)|0>", "-p", "virasoro", "-n", "1"], 0);
    assert_eq!(v["element"], "L(-2)|0>");
}

#[test]
fn bindings_specialize_output() {
    let (c, out, _) = zhu(&["mode", "0", "a(-1)|0>", "a(-1)|lambda>", "--module", "fock", "--bind", "lambda=3/2"]);
    assert_eq!(c, 0);
    assert_eq!(out.trim(), "3/2 a(-1)|lambda>");
    let (c, _, err) = zhu(&["normalize", "|0>", "--bind", "q=1"]);
    assert_eq!(c, 2, "{err}");
}

#[test]
fn reduce_with_certificate() {
    let v = json_ok("reduce", &["reduce", "a(-5)a(-1)|0>", "-n", "1", "--certificate"], 0);
    assert_eq!(v["certificate_rechecked"], true);
    assert!(v["certificate"]["combination"].as_array().unwrap().len() > 0);
}

#[test]
fn membership_and_recheck_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let v = json_ok("membership", &["membership", "a(-2)|0> + a(-1)|0>", "-n", "0", "--out", path.to_str().unwrap()], 0);
    assert_eq!(v["found"], true);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(schema("certificate").is_valid(&file));
    let v = json_ok("recheck", &["recheck", path.to_str().unwrap()], 0);
    assert_eq!(v["rechecked"], true);

    // A tampered coefficient must be rejected.
    let mut bad = file.clone();
    bad["combination"][0]["coefficient"] = Value::String("2".into());
    let bad_path = dir.path().join("bad.json");
    std::fs::write(&bad_path, serde_json::to_string(&bad).unwrap()).unwrap();
    let (c, out, _) = zhu(&["recheck", bad_path.to_str().unwrap()]);
    assert_eq!(c, 1, "{out}");

    // The generator itself is not in O_1(V) within the window.
    let v = json_ok("membership", &["membership", "a(-1)|0>", "-n", "1"], 1);
    assert_eq!(v["found"], false);
}

#[test]
fn verify_presentation_by_name_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let v = json_ok("presentation_report", &["verify-presentation", "heis_A1", "--certificates", dir.path().to_str().unwrap()], 0);
    assert_eq!(v["passed"], true);
    let cert = dir.path().join("heis_A1_0.json");
    let (c, _, err) = zhu(&["recheck", cert.to_str().unwrap()]);
    assert_eq!(c, 0, "{err}");

    let spec = root().join("specs/vir_A0.json");
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&spec).unwrap()).unwrap();
    assert!(schema("presentation_spec").is_valid(&s));
    let v = json_ok("presentation_report", &["verify-presentation", spec.to_str().unwrap()], 0);
    assert_eq!(v["relations"][0]["certified"], true);

    // A false relation fails with exit code 1.
    let mut wrong = s.clone();
    wrong["relations"] = serde_json::json!(["y - x^2"]);
    let wp = dir.path().join("wrong.json");
    std::fs::write(&wp, serde_json::to_string(&wrong).unwrap()).unwrap();
    let v = json_ok("presentation_report", &["verify-presentation", wp.to_str().unwrap()], 1);
    assert_eq!(v["passed"], false);
}

#[test]
fn shipped_specs_match_builtins() {
    for entry in std::fs::read_dir(root().join("specs")).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_stem().unwrap().to_str().unwrap().to_string();
        let (c, out, _) = zhu(&["presentations", &name]);
        assert_eq!(c, 0);
        let shipped: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(serde_json::from_str::<Value>(&out).unwrap(), shipped, "{name}");
        assert!(schema("presentation_spec").is_valid(&shipped), "{name}");
    }
    json_ok("presentations", &["presentations"], 0);
}

#[test]
fn identities() {
    let v = json_ok("identity_report", &["verify-identities", "--identity", "prop_a2"], 0);
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
    let v = json_ok("identity_report", &["verify-identities", "--n-max", "3"], 0);
    assert_eq!(v.as_array().unwrap().len(), 5);
    let (c, _, _) = zhu(&["verify-identities", "--identity", "nope"]);
    assert_eq!(c, 2);
    let (c, _, _) = zhu(&["verify-identities", "--n-min", "4", "--n-max", "2"]);
    assert_eq!(c, 2);
}

#[test]
fn separation_verdicts() {
    let v = json_ok("separation", &["separation", "a(-1)|0>", "-n", "2"], 0);
    assert_eq!(v["verdict"], "separated");
    let v = json_ok("separation", &["separation", "L(-2)|0>", "-p", "virasoro", "-n", "2"], 0);
    assert_eq!(v["verdict"], "separated");
    let v = json_ok("separation", &["separation", "a(-1)|0>", "-n", "0"], 0);
    assert_eq!(v["verdict"], "found_membership");
    assert_eq!(v["rechecked"], true);
    let v = json_ok("separation", &["separation", "L(-2)|0>", "-p", "virasoro", "-n", "1", "--bound", "1"], 1);
    assert_eq!(v["verdict"], "not_separated_up_to_bound");
    let (c, _, err) = zhu(&["separation", "a(-1)|0> + a(-1)^2|0>", "-n", "1"]);
    assert_eq!(c, 2);
    assert!(err.contains("homogeneous"), "{err}");
}

#[test]
fn zero_mode_matrix() {
    let v = json_ok("zero_mode", &["zero-mode", "L(-2)|0>", "-p", "virasoro", "--module", "verma", "--degree", "2"], 0);
    assert_eq!(v["matrix"], serde_json::json!([["h+2", "0"], ["0", "h+2"]]));
    let v = json_ok("zero_mode", &["zero-mode", "a(-1)^2|0>", "--module", "fock", "--degree", "1", "--bind", "lambda=2"], 0);
    assert_eq!(v["matrix"], serde_json::json!([["6"]]));
}

#[test]
fn properties_with_seed() {
    let a = json_ok("suite_report", &["properties", "--suite", "mult_formula", "--cases", "5", "--seed", "7"], 0);
    let b = json_ok("suite_report", &["properties", "--suite", "mult_formula", "--cases", "5", "--seed", "7"], 0);
    assert_eq!(a[0]["seed"], 7);
    assert_eq!(a[0]["failures"], b[0]["failures"]);
    let (c, _, err) = zhu(&["properties", "--suite", "hom_property", "--cases", "2"]);
    assert_eq!(c, 0);
    assert!(err.contains("default seed"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    let (c, _, err) = zhu(&["star", "a(-1|0>", "|0>"]);
    assert_eq!(c, 2);
    assert!(err.contains("byte 4"), "{err}");
    assert!(err.contains('^'), "{err}");
    assert_eq!(zhu(&["frobnicate"]).0, 2);
    assert_eq!(zhu(&["verify-presentation", "no_such_thing"]).0, 2);
    assert_eq!(zhu(&["normalize", "a(-1)|lambda>", "--module", "verma", "-p", "virasoro"]).0, 2);
    assert_eq!(zhu(&["zero-mode", "a(-1)|0>", "--module", "verma"]).0, 2);
}
