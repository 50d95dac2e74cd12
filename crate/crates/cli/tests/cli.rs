use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn qg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qg"))
        .args(args)
        .env_remove("QG_TOL")
        .output()
        .expect("qg runs")
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = qg(args);
    let code = out.status.code().expect("exit code");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

fn tmp(name: &str, contents: &str) -> String {
    let p = std::env::temp_dir().join(format!("qg-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

fn state(v: &Value) -> Vec<f64> {
    v["solve"]["state"].as_array().unwrap().iter().map(|z| z[0].as_f64().unwrap()).collect()
}

#[test]
fn verify_exit_codes() {
    let (code, v) = run(&["verify", &path("c_s3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);

    let bad = tmp("malformed.json", "{\"version\": \"1\", \"kind\": ");
    let out = qg(&["verify", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());

    let wrong_version = tmp("version.json", "{\"version\": \"7\", \"kind\": \"irrdata\", \"blocks\": [[[[1,0]]]]}");
    assert_eq!(qg(&["verify", &wrong_version]).status.code(), Some(2));

    let mut spec: Value = serde_json::from_str(&std::fs::read_to_string(data("c_s3.json")).unwrap()).unwrap();
    let entry = &mut spec["mult"][3][3];
    *entry = (entry.as_f64().unwrap() + 0.25).into();
    let perturbed = tmp("perturbed.json", &spec.to_string());
    let (code, v) = run(&["verify", &perturbed]);
    assert_eq!(code, 1);
    let failures: Vec<&str> = v["failures"].as_array().unwrap().iter().map(|f| f.as_str().unwrap()).collect();
    assert!(failures.contains(&"associativity"), "{failures:?}");
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qg"))
        .args(["verify", &path("c_s3.json")])
        .env("QG_TOL", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_qg"))
        .args(["verify", &path("c_s3.json")])
        .env("QG_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checks"][0]["bound"].as_f64().unwrap(), 2e-6);
}

#[test]
fn haar_states() {
    let (code, v) = run(&["haar", &path("c_z2_functions.json")]);
    assert_eq!(code, 0);
    assert_eq!(state(&v), vec![0.5, 0.5]);

    let (code, v) = run(&["haar", &path("cg_z5.json"), "--method", "both"]);
    assert_eq!(code, 0);
    let s = state(&v);
    assert!((s[0] - 1.0).abs() < 1e-12 && s[1..].iter().all(|x| x.abs() < 1e-12));
    assert_eq!(v["agreement"]["passed"], true);
    assert_eq!(v["solve"]["tracial"], true);

    let (code, v) = run(&["haar", &path("monoid_bialgebra.json")]);
    assert_eq!(code, 1);
    assert!(v["error"].as_str().unwrap().contains("no solution"));

    // Wrong kind of input is an input error.
    assert_eq!(qg(&["haar", &path("nonkac.json")]).status.code(), Some(2));
}

#[test]
fn decompositions() {
    let (code, v) = run(&["decompose", &path("c_s3_functions.json"), "--corep", "defining"]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([1, 2]));
    assert_eq!(v["kac"]["kac"], true);

    let (code, v) = run(&["decompose", &path("s3_permutations.json"), "--corep", "defining"]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([1, 2]));

    let z4 = tmp(
        "z4.json",
        r#"{"version": "1", "kind": "group", "name": "Z4", "construction": "group_algebra",
            "cayley": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]}"#,
    );
    let (code, v) = run(&["decompose", &z4]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([1, 1, 1, 1]));
    for s in v["summands"].as_array().unwrap() {
        assert!((s["q"][0][0][0].as_f64().unwrap() - 1.0).abs() < 1e-9);
    }

    // A matrix of coefficients that is not a corepresentation.
    let mut spec: Value =
        serde_json::from_str(&std::fs::read_to_string(data("c_s3_functions.json")).unwrap()).unwrap();
    spec["coreps"]["broken"] = serde_json::json!({"size": 2, "coeffs": [[0, 0, 1, [1, 0]], [1, 1, 0, [1, 0]]]});
    let broken = tmp("broken.json", &spec.to_string());
    let (code, v) = run(&["decompose", &broken, "--corep", "broken"]);
    assert_eq!(code, 1);
    assert!(v["error"].as_str().unwrap().contains("corepresentation"));
    assert_eq!(qg(&["decompose", &broken, "--corep", "missing"]).status.code(), Some(2));
}

#[test]
fn duals() {
    let (code, v) = run(&["dual", &path("c_s3_functions.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["blocks"], serde_json::json!([1, 1, 2]));
    assert!(v["fourier_roundtrip"]["residual"].as_f64().unwrap() < 1e-9);
    assert_eq!(v["biduality"]["isomorphic"], true);

    let (code, v) = run(&["dual", "--truncated", &path("nonkac.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["unimodularity"]["weights_equal"], false);
    assert!(v["modular"]["weight_gap"].as_f64().unwrap() > 1.0);
    assert!(v["modular"]["witness"].is_array());

    let (code, v) = run(&["dual", &path("cg_z3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["biduality"]["isomorphic"], true);

    assert_eq!(qg(&["dual", "--truncated", &path("cg_z3.json")]).status.code(), Some(2));
}

#[test]
fn rewriting() {
    let (code, v) = run(&["rewrite", &path("suq2_q2.json"), "--expr", "g a"]);
    assert_eq!(code, 0);
    assert_eq!(v["normal_form"], "0.5 a g");
    let (code, v) = run(&["rewrite", &path("suq2_q2.json"), "--expr", "a* a"]);
    assert_eq!(code, 0);
    assert_eq!(v["normal_form"], "1 - g* g");
    let (code, v) = run(&["rewrite", &path("sn_plus_3.json"), "--degree-cap", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["delta"]["passed"], true);
    assert_eq!(qg(&["rewrite", &path("suq2_q2.json"), "--expr", "b a"]).status.code(), Some(2));

    // Two rules undoing each other never terminate.
    let looping = tmp(
        "loop.json",
        r#"{"version": "1", "kind": "presentation", "generators": ["x", "y"], "relations": [],
            "rules": [{"lhs": "x y", "rhs": [[[1, 0], "y x"]]}, {"lhs": "y x", "rhs": [[[1, 0], "x y"]]}]}"#,
    );
    let (code, v) = run(&["rewrite", &looping, "--expr", "x y"]);
    assert_eq!(code, 1);
    assert!(v["error"].as_str().unwrap().contains("steps"));
}

#[test]
fn magic_unitaries() {
    let (code, v) = run(&["magic", &path("magic4_rank1.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["relations"]["passed"], true);

    let not_magic = tmp(
        "notmagic.json",
        r#"{"version": "1", "kind": "magic",
            "entries": [[[[[1, 0]]], [[[1, 0]]]], [[[[0, 0]]], [[[0, 0]]]]]}"#,
    );
    let (code, v) = run(&["magic", &not_magic]);
    assert_eq!(code, 1);
    assert_eq!(v["magic"]["passed"], false);
}

#[test]
fn output_is_byte_stable() {
    for args in [
        vec!["dual", "--seed", "11", data("cg_z3.json").to_str().unwrap()],
        vec!["decompose", "--seed", "5", data("c_s3_functions.json").to_str().unwrap(), "--corep", "defining"],
    ] {
        let a = qg(&args);
        let b = qg(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}
