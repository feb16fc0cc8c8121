use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn nullify(args: &[&str]) -> Output {
    nullify_env(args, &[])
}

fn nullify_env(args: &[&str], env: &[(&str, &Path)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nullify"));
    c.args(args)
        .env_remove("NULLIFY_CONFIG")
        .env_remove("NULLIFY_CACHE_DIR");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let o = nullify(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/formats")
}

fn assert_schema(name: &str, v: &Value) {
    let text = std::fs::read_to_string(schema_dir().join(format!("{name}.schema.json"))).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(v)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{v:#}");
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("nullify-cli-test-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn nulldiag_of_eleven_a_263() {
    let v = ok_json(&["nulldiag", "--fixture", "11a263"]);
    assert_schema("null-result", &v);
    assert_eq!(v["value"], 8);
    assert_eq!(v["kind"], "diagram");
    assert_eq!(v["label"], "11a_263");
    assert_eq!(v["witness"].as_array().unwrap().len(), 8);
}

#[test]
fn fourplat_ten_twenty_two() {
    let v = ok_json(&["fourplat", "--vector", "1,2,3,1,3", "--all"]);
    assert_schema("fourplat", &v);
    assert_eq!(v["n_d"], 6);
    assert_eq!(v["signature"], 0);
    assert_eq!(v["fraction"], "49/13");
    assert_eq!(v["crossing_number"], 10);
    let f = ok_json(&["fourplat", "--fraction", "49/13"]);
    assert_schema("fourplat", &f);
    assert_eq!(f["canonical_vector"], serde_json::json!([1, 2, 3, 1, 3]));
}

#[test]
fn invalid_gauss_is_a_usage_error() {
    let o = nullify(&["parse", "--gauss", "O1+ U2\u{2212}"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("crossing"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        nullify(&["nulldiag", "--fixture", "12n_999"]).status.code(),
        Some(2)
    );
    assert_eq!(nullify(&["nulldiag"]).status.code(), Some(2));
    assert_eq!(
        nullify(&["nulldiag", "--fixture", "3_1", "--pd", "X[1,2,2,1]"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(nullify(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        nullify(&["--depth", "0", "nullbound", "--fixture", "3_1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nullify(&["fourplat", "--fraction", "3"]).status.code(),
        Some(2)
    );
    // too large for the exhaustive search
    let o = nullify(&["nulldiag", "--braid", "8:1,2,3,4,5,6,7,1,2,3,4,5,6,7,1,2,3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("limit"));
}

#[test]
fn every_json_report_matches_its_schema() {
    let parse = ok_json(&["parse", "--fixture", "L4a1{1}"]);
    assert_schema("parse", &parse);
    assert_eq!(parse["components"], 2);
    let inv = ok_json(&["invariants", "--fixture", "4_1"]);
    assert_schema("invariants", &inv);
    assert_eq!(
        (
            inv["signature"].as_i64(),
            inv["genus"].as_i64(),
            inv["s"].as_i64()
        ),
        (Some(0), Some(1), Some(3))
    );
    assert_eq!(inv["conway"], "1 + -1*z^2");
    let nb = ok_json(&["nullbound", "--fixture", "5_2"]);
    assert_schema("null-result", &nb);
    assert_eq!(nb["kind"], "general_interval");
    let m = ok_json(&["montesinos", "--random", "4", "--seed", "5"]);
    assert_schema("montesinos", &m);
    assert!(m.as_array().unwrap().iter().all(|r| r["holds"] == true));
    let one = ok_json(&[
        "montesinos",
        "--params",
        r#"{"tangles":[[3],[-3],[2]],"e":0}"#,
    ]);
    assert_schema("montesinos", &one);
    let frac = ok_json(&[
        "montesinos",
        "--params",
        r#"{"fractions":[[1,3],[-1,3],[1,2]],"e":0}"#,
    ]);
    assert_eq!(frac["params"], one["params"]);
    let t = ok_json(&["enumerate", "null-one", "--max-cr", "8"]);
    assert_schema("enumerate-null-one", &t);
    let h = ok_json(&["enumerate", "high-null", "--m", "9", "--k", "2"]);
    assert_schema("enumerate-high-null", &h);
    assert_eq!(h["ordered"], 4);
    let f = ok_json(&["enumerate", "family", "--kind", "b", "--a", "1", "--b", "1"]);
    assert_schema("enumerate-family", &f);
    assert_eq!(f["upper"], 1);
    let v = ok_json(&["verify", "--only", "8"]);
    assert_schema("verify", &v);
    assert_eq!(v[0]["passed"], true);
}

#[test]
fn batches_keep_input_order() {
    let dir = scratch("batch");
    let file = dir.join("in.txt");
    std::fs::write(
        &file,
        "fixture: 5_1\n# comment\n\nbraid: 3:1,-2,1,-2\nfixture: 3_1\nO1+ U2+ O3+ U1+ O2+ U3+\n",
    )
    .unwrap();
    let f = file.to_str().unwrap();
    let one = nullify(&["nulldiag", "--file", f, "--jobs", "1"]);
    let four = nullify(&["nulldiag", "--file", f, "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_schema("null-result", &v);
    let labels: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["label"].as_str().unwrap())
        .collect();
    assert_eq!(
        labels,
        [
            "5_1",
            "braid: 3:1,-2,1,-2",
            "3_1",
            "O1+ U2+ O3+ U1+ O2+ U3+"
        ]
    );
    let values: Vec<i64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["value"].as_i64().unwrap())
        .collect();
    assert_eq!(values, [4, 2, 2, 2]);

    std::fs::write(&file, "fixture: 3_1\nX[1,2\n").unwrap();
    let bad = nullify(&["parse", "--file", f]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains(":2:"));
}

#[test]
fn same_seed_same_bytes() {
    let a = nullify(&[
        "montesinos",
        "--random",
        "6",
        "--seed",
        "11",
        "--format",
        "csv",
    ]);
    let b = nullify(&[
        "montesinos",
        "--random",
        "6",
        "--seed",
        "11",
        "--format",
        "csv",
    ]);
    let c = nullify(&[
        "montesinos",
        "--random",
        "6",
        "--seed",
        "12",
        "--format",
        "csv",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let x = nullify(&["nullbound", "--fixture", "6_2"]);
    let y = nullify(&["nullbound", "--fixture", "6_2"]);
    assert_eq!(x.stdout, y.stdout);
}

#[test]
fn formats() {
    let csv = stdout(&nullify(&[
        "enumerate",
        "null-one",
        "--max-cr",
        "6",
        "--format",
        "csv",
    ]));
    assert!(csv.starts_with(
        "p,q,epsilon,derived_p,derived_q,vector,crossing_number,verified,mirror_of\n"
    ));
    assert!(csv.contains("3,1,1,9,4,3 1 -3,6,true,0"));
    let text = stdout(&nullify(&[
        "invariants",
        "--fixture",
        "3_1",
        "--format",
        "text",
    ]));
    assert!(text.contains("signature: -2\n") && text.contains("writhe: 3\n"));
    let rows = stdout(&nullify(&["parse", "--fixture", "3_1", "--format", "csv"]));
    assert!(rows.starts_with("alternating,components,crossings,gauss,label,pd,reduced,writhe\n"));
    let v = stdout(&nullify(&["verify", "--only", "8", "--format", "text"]));
    assert!(v.starts_with("criterion  8 PASS"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = scratch("config");
    let cfg = dir.join("nullify.conf");
    std::fs::write(&cfg, "# defaults\nformat = csv\ndepth = 2\n").unwrap();
    let c = cfg.to_str().unwrap();
    let csv = stdout(&nullify(&["--config", c, "parse", "--fixture", "3_1"]));
    assert!(csv.starts_with("alternating,"));
    let json = nullify(&[
        "--config",
        c,
        "--format",
        "json",
        "parse",
        "--fixture",
        "3_1",
    ]);
    assert!(serde_json::from_slice::<Value>(&json.stdout).is_ok());
    // depth 2 from the file caps the interval search
    let nb = nullify_env(
        &["nullbound", "--fixture", "7_4"],
        &[("NULLIFY_CONFIG", &cfg)],
    );
    let flags = nullify(&[
        "nullbound",
        "--fixture",
        "7_4",
        "--depth",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(nb.stdout, flags.stdout);
    std::fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(
        nullify(&["--config", c, "parse", "--fixture", "3_1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn cache_round_trip() {
    let dir = scratch("cache");
    let env = [("NULLIFY_CACHE_DIR", dir.as_path())];
    let first = nullify_env(&["--cache", "nulldiag", "--fixture", "7_4"], &env);
    assert!(dir.join("nulldiag.json").exists());
    let second = nullify_env(&["--cache", "nulldiag", "--fixture", "7_4"], &env);
    let plain = nullify(&["nulldiag", "--fixture", "7_4"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, plain.stdout);
}
