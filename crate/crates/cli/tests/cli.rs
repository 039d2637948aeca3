use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn detmoments(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_detmoments"))
        .args(args)
        .env("DETMOMENTS_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn exact_values_as_fractions() {
    let v = json(&detmoments(&["exact", "--measure", "bures", "--variant", "two-qubit", "--n", "1", "--k", "0"]));
    assert_eq!(v["value"], "-1/256");
    let v = json(&detmoments(&["exact", "--measure", "hs", "--alpha", "1/2", "--n", "1", "--k", "0"]));
    assert_eq!(v["value"], "-1/858");
    let v = json(&detmoments(&["exact", "--measure", "hs", "--alpha", "1", "--n", "0", "--k", "0"]));
    assert_eq!(v["value"], "1");
    assert_eq!(v["meta"]["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn exact_grid_csv() {
    let out = detmoments(&["exact", "--measure", "hs", "--variant", "two-rebit", "--grid", "1,1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# tool=detmoments"));
    assert_eq!(lines[1], "n,k,value,decimal");
    assert!(lines[5].starts_with("1,1,0,"));
}

#[test]
fn usage_errors_fail() {
    assert!(!detmoments(&["exact", "--measure", "nope"]).status.success());
    let out = detmoments(&["exact", "--measure", "bures", "--variant", "two-qubit", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let out = detmoments(&["mc", "--measure", "bures", "--variant", "retrit", "--samples", "1000"]);
    assert_eq!(out.status.code(), Some(1));
    let out = detmoments(&["mc", "--measure", "hs", "--variant", "two-qubit", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mc_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let csv = dir.path().join(name);
        let summary = dir.path().join(format!("{name}.json"));
        let out = Command::new(env!("CARGO_BIN_EXE_detmoments"))
            .args([
                "mc", "--measure", "bures", "--variant", "two-qubit", "--alpha", "1/2",
                "--samples", "3000", "--seed", "7", "--grid", "2,2", "--chunk-size", "1000",
            ])
            .arg("--out")
            .arg(&csv)
            .arg("--summary")
            .arg(&summary)
            .env("DETMOMENTS_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        (fs::read(csv).unwrap(), fs::read(summary).unwrap())
    };
    let (a, sa) = run("a.csv", "1");
    let (b, _) = run("b.csv", "3");
    let text = String::from_utf8(a).unwrap();
    let other = String::from_utf8(b).unwrap();
    // the header hash covers the output path, so only the body must match
    let body = |t: &str| t.split_once('\n').unwrap().1.to_string();
    assert_eq!(body(&text), body(&other));
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].contains("seed=7"));
    assert_eq!(lines[1], "n,k,mc,exact,ratio,se,count,measure,variant,alpha");
    assert_eq!(lines.len(), 2 + 9);
    // the α = 1/2 balanced moment vanishes, so its ratio is empty
    let row11 = lines.iter().find(|l| l.starts_with("1,1,")).unwrap();
    assert_eq!(row11.split(',').nth(4), Some(""));
    let s: Value = serde_json::from_slice(&sa).unwrap();
    assert_eq!(s["samples"], 3000);
    assert_eq!(s["range_violations"], 0);
}

#[test]
fn quad_and_normalization() {
    let v = json(&detmoments(&["quad", "--measure", "bures", "--variant", "two-rebit", "--pattern", "2,1,1,0"]));
    let x = v["result"]["value"].as_f64().unwrap();
    assert!((x / (41.0 / 40960.0) - 1.0).abs() < 1e-8);
    let v = json(&detmoments(&["quad", "--measure", "bures", "--variant", "two-qubit", "--normalization"]));
    assert_eq!(v["exact"], "71680·π^-2");
    let v = json(&detmoments(&[
        "quad", "--measure", "bures", "--variant", "two-rebit", "--missing", "l8", "--k", "0", "--rel-tol", "1e-8",
    ]));
    assert_eq!(v["result"]["pattern"], "8,0,0,0");
    assert!(v["result"]["value"].as_f64().unwrap() > 0.0);
}

#[test]
fn fit_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.csv");
    // (8k² + 22k + 11)/(8k² − 2k − 1) at k = 1..=6
    let mut s = String::from("k,numerator,denominator\n");
    for k in 1..=6i64 {
        s += &format!("{k},{},{}\n", 8 * k * k + 22 * k + 11, 8 * k * k - 2 * k - 1);
    }
    fs::write(&path, s).unwrap();
    let v = json(&detmoments(&["fit", "--points", path.to_str().unwrap(), "--deg-num", "2", "--deg-den", "2"]));
    assert_eq!(v["num_coeffs"], serde_json::json!(["11", "22", "8"]));
    assert_eq!(v["den_coeffs"], serde_json::json!(["-1", "-2", "8"]));
}

#[test]
fn sepprob_hs() {
    let dir = tempfile::tempdir().unwrap();
    let dens = dir.path().join("density.csv");
    let v = json(&detmoments(&[
        "sepprob", "--measure", "hs", "--alpha", "1", "--order", "48", "--points", "11",
        "--density-out", dens.to_str().unwrap(),
    ]));
    let p = v["estimate"].as_f64().unwrap();
    assert!((0.2..0.3).contains(&p), "{p}");
    assert_eq!(v["support"], serde_json::json!(["-1/16", "1/256"]));
    let text = fs::read_to_string(dens).unwrap();
    assert_eq!(text.lines().count(), 2 + 11);
}

#[test]
fn selftest_passes() {
    let out = detmoments(&["selftest"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}
