use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qpoly").chain(args.iter().copied());
    let code = qpoly_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn check_exit_codes() {
    assert_eq!(run(&["check", "--array", "6,4,2;1,2,3"]).0, 0);
    assert_eq!(run(&["check", "--array", "3,2,2,1;1,1,1,2"]).0, 1);
    assert_eq!(run(&["check", "--array", "3,2,1;1,2,3"]).0, 2);
    assert_eq!(run(&["check", "--array", "6,4;1,2"]).0, 2);
    assert_eq!(run(&["check", "--array", "3,2,1;1,2,2"]).0, 2);
    assert_eq!(run(&["check", "--array", "not an array"]).0, 2);
    assert_eq!(run(&["check", "--array", "6,4,2;1,2,3", "--precision", "zero"]).0, 2);
}

#[test]
fn check_json_fields() {
    let (code, out, _) = run(&["check", "--array", "{6,4,2;1,2,3}", "--json", "--oracle"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["det_g"], "0");
    assert_eq!(v["is_q_polynomial"], true);
    assert_eq!(v["array"], "6,4,2;1,2,3");
    assert_eq!(v["oracle"]["agrees"], true);
    assert_eq!(v["oracle"]["ordering"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(v["spectrum"]["eigenvalues"][1], "[3, 3]");
    assert_eq!(v["tool"]["version"], env!("CARGO_PKG_VERSION"));
    assert!(v["timing_us"]["total"].is_u64());
}

#[test]
fn error_objects_in_json_mode() {
    let (code, out, _) = run(&["check", "--array", "3,2,1;1,2,3", "--json"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["error"]["kind"], "hypothesis");
    assert_eq!(v["det_g"], "0");
    assert_eq!(v["is_q_polynomial"], Value::Null);

    let (_, out, _) = run(&["check", "--array", "3,2,1;1,2,2", "--json"]);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["error"]["kind"], "feasibility");
    assert_eq!(v["feasibility"]["ok"], false);
    assert!(!v["feasibility"]["violations"].as_array().unwrap().is_empty());

    let (code, out, _) = run(&["params", "--array", "6,4;1,2", "--json"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["error"]["kind"], "diameter");
}

#[test]
fn json_round_trips_byte_for_byte() {
    let cases: [&[&str]; 5] = [
        &["check", "--array", "3,2,2,1;1,1,1,2", "--json", "--oracle"],
        &["check", "--array", "4,2,1;1,1,4", "--json"],
        &["params", "--array", "6,4,2;1,2,3", "--json"],
        &["gram", "--array", "2,1,1;1,1,1", "--json"],
        &["spectrum", "--array", "2,1,1;1,1,1", "--json", "--krein"],
    ];
    for args in cases {
        let (_, out, _) = run(args);
        let line = out.trim_end();
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), line, "{args:?}");
    }
}

#[test]
fn gram_csv_shape() {
    let (code, out, _) = run(&["gram", "--array", "2,1,1;1,1,1", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<i64>> = out
        .lines()
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r.len() == 12));
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            assert_eq!(*x, rows[j][i]);
        }
    }
    let (_, csv2, _) = run(&["gram", "--array", "2,1,1;1,1,1", "--csv"]);
    assert_eq!(out, csv2);
}

#[test]
fn params_and_spectrum_text() {
    let (_, out, _) = run(&["params", "--array", "6,4,2;1,2,3"]);
    assert!(out.lines().any(|l| l == "p^0_22 = 12"));
    let (_, out, _) = run(&["spectrum", "--array", "6,4,2;1,2,3"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("theta_")).count(), 4);
    let (_, out, _) = run(&["spectrum", "--array", "6,4,2;1,2,3", "--json"]);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 4);
}

#[test]
fn catalog_filter_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let (code, out, err) = run(&["catalog", "run", "--filter", "hamming", "--cache-dir", cache]);
    assert_eq!(code, 0, "{err}");
    let first = json_lines(&out);
    assert_eq!(first.len(), 4);
    assert!(first.iter().all(|r| r["tags"].as_array().unwrap().contains(&"hamming".into())));
    assert!(first.iter().all(|r| r["cached"] == false));
    assert!(dir.path().join("qpoly-cache.json").exists());

    let (_, out, err) = run(&["catalog", "run", "--filter", "hamming", "--cache-dir", cache]);
    let second = json_lines(&out);
    assert!(second.iter().all(|r| r["cached"] == true));
    assert!(err.contains("4 cached"));
    for (a, b) in first.iter().zip(&second) {
        assert_eq!(a["det_g"], b["det_g"]);
    }

    // Different precision settings are a different cache key.
    let (_, out, _) = run(&[
        "catalog", "run", "--filter", "hamming", "--cache-dir", cache, "--precision", "1e-25",
    ]);
    assert!(json_lines(&out).iter().all(|r| r["cached"] == false));
}

#[test]
fn catalog_list_and_custom_file() {
    let (_, out, _) = run(&["catalog", "list", "--filter", "cycle"]);
    assert_eq!(out.lines().count(), 3);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mini.txt");
    std::fs::write(&path, "# tiny\nC7|2,1,1;1,1,1|cycle,expect:not-q-polynomial,prov:oracle|wrong on purpose\n").unwrap();
    let (code, out, err) = run(&[
        "catalog", "run", "--no-cache", "--catalog", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 1, "{err}");
    let r = &json_lines(&out)[0];
    assert_eq!(r["expectation"]["met"], false);
    assert!(err.contains("1 expectation mismatches"));

    std::fs::write(&path, "broken line\n").unwrap();
    let (code, _, err) = run(&["catalog", "run", "--no-cache", "--catalog", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("4 '|'-separated fields"));
}

#[test]
fn scheme_from_family_and_edges() {
    let (code, out, _) = run(&["scheme", "--family", "johnson:7:3", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["array"], "12,6,2;1,4,9");
    assert_eq!(v["gram_matches_formula"], true);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c7.txt");
    let edges: String = (0..7).map(|i| format!("{i} {}\n", (i + 1) % 7)).collect();
    std::fs::write(&path, edges).unwrap();
    let (code, out, _) = run(&["scheme", "--edges", path.to_str().unwrap(), "--base", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("{2,1,1;1,1,1}"));

    let (code, _, err) = run(&["scheme", "--family", "petersen"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown graph family"));
}

#[test]
fn binary_honours_cache_env() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_qpoly"))
        .args(["catalog", "run", "--filter", "Cycle C7"])
        .env("QPOLY_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(status.status.success());
    assert!(dir.path().join("qpoly-cache.json").exists());

    let out = Command::new(env!("CARGO_BIN_EXE_qpoly"))
        .args(["check", "--array", "3,2,1;1,2,3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
