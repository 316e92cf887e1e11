use std::path::{Path, PathBuf};
use std::process::Command;

use grover_exact::cli::{run, CommandResult};
use serde_json::Value;

fn cli(args: &[&str]) -> CommandResult {
    run(std::iter::once("grover-exact").chain(args.iter().copied()))
}

fn payload(r: &CommandResult) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("bad JSON {:?}: {e}", r.stdout))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn bounds_examples() {
    let r = cli(&["bounds", "--n", "6"]);
    assert_eq!(r.exit_code, 0);
    let v = payload(&r);
    assert_eq!(
        (v["general_lower"].as_u64(), v["construction_size"].as_u64()),
        (Some(2), Some(4))
    );

    let v = payload(&cli(&["bounds", "--n", "100"]));
    assert_eq!(
        (v["general_lower"].as_u64(), v["construction_size"].as_u64()),
        (Some(45), Some(67))
    );

    let r = cli(&["bounds", "--n", "2"]);
    assert_eq!(r.exit_code, 0);
    assert_eq!(payload(&r)["indistinguishable"], true);

    assert_eq!(cli(&["bounds"]).exit_code, 2);
    assert_eq!(cli(&["bounds", "--n", "x"]).exit_code, 2);
    assert_eq!(cli(&["bounds", "--n", "0"]).exit_code, 2);
}

#[test]
fn build_examples() {
    let r = cli(&["build", "--n", "5"]);
    assert_eq!(r.exit_code, 0);
    let v = payload(&r);
    assert_eq!(v["kind"], "product");
    assert_eq!(v["blocks"].as_array().unwrap().len(), 4);

    let r = cli(&["build", "--n", "6", "--entangled", "--t", "2"]);
    assert_eq!(r.exit_code, 0);
    let v = payload(&r);
    assert_eq!(
        (v["kind"].as_str(), v["t"].as_u64()),
        (Some("entangled"), Some(2))
    );

    let r = cli(&["build", "--n", "2"]);
    assert_eq!(r.exit_code, 1);
    assert!(r.stderr.contains("global phase"));

    let r = cli(&["build", "--n", "5", "--entangled", "--t", "1"]);
    assert_eq!(r.exit_code, 1);
    assert_eq!(payload(&r)["feasible"], false);

    assert_eq!(
        cli(&["build", "--builtin", "n6-entangled", "--diag", "5"]).exit_code,
        0
    );
    assert_eq!(cli(&["build", "--builtin", "nope"]).exit_code, 2);
    assert_eq!(
        cli(&["build", "--builtin", "n5-product", "--n", "6"]).exit_code,
        2
    );
    assert_eq!(
        cli(&[
            "build",
            "--n",
            "6",
            "--entangled",
            "--t",
            "2",
            "--max-compositions",
            "10"
        ])
        .exit_code,
        2
    );
}

#[test]
fn round_trip_product_3_to_50() {
    let dir = tempfile::tempdir().unwrap();
    for n in 3..=50 {
        let built = cli(&["build", "--n", &n.to_string()]);
        assert_eq!(built.exit_code, 0, "n = {n}");
        let path = write(dir.path(), &format!("p{n}.json"), &built.stdout);
        let r = cli(&["verify", "--scheme", path.to_str().unwrap()]);
        assert_eq!(r.exit_code, 0, "n = {n}: {}", r.stdout);
        assert_eq!(payload(&r)["valid"], true);
    }
}

#[test]
fn round_trip_entangled() {
    let dir = tempfile::tempdir().unwrap();
    for n in [5, 6] {
        let built = cli(&["build", "--n", &n.to_string(), "--entangled", "--t", "2"]);
        assert_eq!(built.exit_code, 0, "n = {n}");
        let path = write(dir.path(), &format!("e{n}.json"), &built.stdout);
        let r = cli(&["verify", "--scheme", path.to_str().unwrap()]);
        assert_eq!(r.exit_code, 0);
        assert_eq!(payload(&r)["method"], "parity-mass");
    }
}

#[test]
fn verify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let built = cli(&["build", "--builtin", "n6-entangled"]);
    let path = write(dir.path(), "phi6.json", &built.stdout);
    assert_eq!(
        cli(&["verify", "--scheme", path.to_str().unwrap()]).exit_code,
        0
    );
    assert_eq!(cli(&["verify", "--scheme", "n6-entangled"]).exit_code, 0);

    // move 1/32 of mass from |12> to |13>
    let mut doc: Value = serde_json::from_str(&built.stdout).unwrap();
    for w in doc["weights"].as_array_mut().unwrap() {
        let c: Vec<u64> = serde_json::from_value(w["composition"].clone()).unwrap();
        if c == [1, 1, 0, 0, 0, 0] || c == [1, 0, 1, 0, 0, 0] {
            let q = if c[1] == 1 { "1/32" } else { "3/32" };
            w["q"] = Value::String(q.into());
        }
    }
    let path = write(dir.path(), "perturbed.json", &doc.to_string());
    let r = cli(&["verify", "--scheme", path.to_str().unwrap()]);
    assert_eq!(r.exit_code, 1);
    let v = payload(&r);
    assert_eq!(v["valid"], false);
    let pairs: Vec<[usize; 2]> = serde_json::from_value(v["failing_pairs"].clone()).unwrap();
    assert!(pairs.contains(&[2, 4]) && pairs.contains(&[3, 4]));
    let defects: Vec<String> = serde_json::from_value(v["defects"].clone()).unwrap();
    assert!(defects.iter().all(|d| d == "1/32" || d == "-1/32"));

    let missing = r#"{"kind":"product","n":5,"blocks":[{"type":"star","i":3},{"type":"star","i":4},{"type":"star","i":5}]}"#;
    let path = write(dir.path(), "missing.json", missing);
    let r = cli(&["verify", "--scheme", path.to_str().unwrap()]);
    assert_eq!(r.exit_code, 1);
    let pairs: Vec<[usize; 2]> =
        serde_json::from_value(payload(&r)["failing_pairs"].clone()).unwrap();
    assert_eq!(pairs, vec![[1, 2]]);
}

#[test]
fn verify_full_tensor_agrees() {
    let r = cli(&["verify", "--scheme", "n5-product", "--full-tensor"]);
    assert_eq!(r.exit_code, 0);
    assert_eq!(payload(&r)["method"], "full-tensor");
    let r = cli(&[
        "verify",
        "--scheme",
        "n5-product",
        "--full-tensor",
        "--max-tuples",
        "10",
    ]);
    assert_eq!(r.exit_code, 2);
}

#[test]
fn malformed_files_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            "dup",
            r#"{"kind":"entangled","n":2,"t":1,"weights":[{"composition":[1,0],"q":"1/2"},{"composition":[1,0],"q":"1/2"}]}"#,
        ),
        (
            "mass",
            r#"{"kind":"entangled","n":2,"t":1,"weights":[{"composition":[1,0],"q":"1/3"},{"composition":[0,1],"q":"1/3"}]}"#,
        ),
        (
            "range",
            r#"{"kind":"product","n":3,"blocks":[{"type":"pair","i":1,"j":7}]}"#,
        ),
        (
            "float",
            r#"{"kind":"entangled","n":2,"t":1,"weights":[{"composition":[1,0],"q":"0.5"}]}"#,
        ),
        ("syntax", "{ not json"),
    ];
    for (name, text) in cases {
        let path = write(dir.path(), name, text);
        let r = cli(&["verify", "--scheme", path.to_str().unwrap()]);
        assert_eq!(r.exit_code, 3, "{name}: {}", r.stderr);
        assert!(r.stdout.is_empty());
    }
    let path = write(
        dir.path(),
        "state",
        r#"{"n":2,"amplitudes":[{"sq":"1/2"},{"sq":"1/3"}]}"#,
    );
    assert_eq!(
        cli(&["graph", "--state", path.to_str().unwrap()]).exit_code,
        3
    );
    assert_eq!(
        cli(&["verify", "--scheme", "/no/such/file.json"]).exit_code,
        2
    );
}

#[test]
fn search_examples() {
    let v = payload(&cli(&["search", "--n", "6", "--mode", "product"]));
    assert_eq!(v["min_t"], 3);
    assert!(v["nodes_explored"].as_u64().unwrap() > 0);

    let r = cli(&["search", "--n", "6", "--mode", "entangled", "--t-max", "3"]);
    assert_eq!(r.exit_code, 0);
    let v = payload(&r);
    assert_eq!(v["min_t"], 2);
    assert_eq!(v["lp_stats"]["variables"], 21);

    let v = payload(&cli(&["search", "--n", "4", "--mode", "product"]));
    assert_eq!(v["min_t"], 1);
    assert_eq!(
        v["witness"],
        serde_json::json!([{"type": "quad", "a": 1, "b": 2, "c": 3, "d": 4}])
    );

    assert_eq!(
        cli(&["search", "--n", "10", "--mode", "product"]).exit_code,
        2
    );
    assert_eq!(
        cli(&["search", "--n", "17", "--mode", "product", "--max-n", "20"]).exit_code,
        2
    );
    assert_eq!(
        cli(&[
            "search",
            "--n",
            "9",
            "--mode",
            "entangled",
            "--max-compositions",
            "50"
        ])
        .exit_code,
        2
    );
    assert_eq!(
        cli(&["search", "--n", "6", "--mode", "entangled", "--t-max", "1"]).exit_code,
        1
    );
    assert_eq!(
        cli(&["search", "--n", "2", "--mode", "product"]).exit_code,
        1
    );
    assert_eq!(cli(&["search", "--n", "6", "--mode", "mixed"]).exit_code, 2);
}

#[test]
fn single_element_needs_no_query() {
    for mode in ["product", "entangled"] {
        let v = payload(&cli(&["search", "--n", "1", "--mode", mode]));
        assert_eq!(v["min_t"], 0, "{mode}");
    }
    let v = payload(&cli(&["identify", "--n", "1", "--hidden", "1"]));
    assert_eq!(
        (v["identified"].as_u64(), v["queries"].as_u64()),
        (Some(1), Some(0))
    );
}

#[test]
fn search_is_deterministic() {
    for args in [
        ["search", "--n", "7", "--mode", "product"],
        ["search", "--n", "6", "--mode", "entangled"],
    ] {
        assert_eq!(cli(&args), cli(&args));
    }
}

#[test]
fn identify_examples() {
    let v = payload(&cli(&["identify", "--n", "6", "--hidden", "4"]));
    assert_eq!(
        (v["identified"].as_u64(), v["queries"].as_u64()),
        (Some(4), Some(4))
    );
    let v = payload(&cli(&[
        "identify",
        "--n",
        "6",
        "--hidden",
        "4",
        "--scheme",
        "n6-entangled",
    ]));
    assert_eq!(
        (v["identified"].as_u64(), v["queries"].as_u64()),
        (Some(4), Some(2))
    );
    let v = payload(&cli(&[
        "identify",
        "--n",
        "5",
        "--hidden",
        "1",
        "--scheme",
        "n5-product",
    ]));
    assert_eq!(
        (v["identified"].as_u64(), v["queries"].as_u64()),
        (Some(1), Some(2))
    );

    assert_eq!(cli(&["identify", "--n", "6", "--hidden", "7"]).exit_code, 2);
    assert_eq!(
        cli(&[
            "identify",
            "--n",
            "5",
            "--hidden",
            "1",
            "--scheme",
            "n6-entangled"
        ])
        .exit_code,
        2
    );
    assert_eq!(cli(&["identify", "--n", "2", "--hidden", "1"]).exit_code, 1);

    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"kind":"product","n":3,"blocks":[{"type":"pair","i":1,"j":2}]}"#,
    );
    let r = cli(&[
        "identify",
        "--n",
        "3",
        "--hidden",
        "1",
        "--scheme",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(r.exit_code, 1);
}

#[test]
fn graph_examples() {
    let count = |spec: &str| {
        let r = cli(&["graph", "--block", spec, "--n", "6"]);
        assert_eq!(r.exit_code, 0);
        payload(&r)["edges"].as_array().unwrap().len()
    };
    assert_eq!(count("pair 1 2"), 8);
    assert_eq!(count("star 1"), 5);
    assert_eq!(count("quad 1 2 3 4"), 6);
    assert_eq!(
        cli(&["graph", "--block", "pair 1 9", "--n", "6"]).exit_code,
        2
    );
    assert_eq!(cli(&["graph", "--block", "pair 1 2"]).exit_code, 2);

    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "state.json",
        r#"{"n":4,"amplitudes":[{"sq":"1/4"},{"sq":"1/4"},{"sq":"1/4"},{"sq":"1/4","neg":true}]}"#,
    );
    let v = payload(&cli(&["graph", "--state", path.to_str().unwrap()]));
    assert_eq!(v["edge_count"], 6);
}

#[test]
fn help_and_version_exit_0() {
    let r = cli(&["--help"]);
    assert_eq!(r.exit_code, 0);
    assert!(r.stdout.contains("identify"));
    assert_eq!(cli(&["--version"]).exit_code, 0);
    assert_eq!(cli(&[]).exit_code, 2);
}

#[test]
fn binary_matches_in_process() {
    let exe = env!("CARGO_BIN_EXE_grover-exact");
    for args in [
        vec!["bounds", "--n", "6"],
        vec!["build", "--n", "2"],
        vec!["verify", "--scheme", "n6-entangled"],
        vec!["search", "--n", "10", "--mode", "product"],
    ] {
        let out = Command::new(exe).args(&args).output().unwrap();
        let expected = cli(&args);
        assert_eq!(out.status.code(), Some(expected.exit_code), "{args:?}");
        assert_eq!(String::from_utf8(out.stdout).unwrap(), expected.stdout);
        assert_eq!(String::from_utf8(out.stderr).unwrap(), expected.stderr);
    }
}
