use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermite-deform"))
        .args(args)
        .env_remove("HERMITE_DEFORM_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&full)).expect("valid json")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn hermite_pretty() {
    assert!(stdout(&["hermite", "1", "1"]).starts_with("H_{1,1} = z z~ - 1\n"));
    assert!(stdout(&["hermite", "0", "0"]).starts_with("H_{0,0} = 1\n"));
}

#[test]
fn hermite_json_terms() {
    let v = json(&["hermite", "2", "1"]);
    let terms = v["poly"]["terms"].as_array().unwrap();
    let got: Vec<(u64, u64, &str)> = terms
        .iter()
        .map(|t| (t["z"].as_u64().unwrap(), t["zbar"].as_u64().unwrap(), t["re"].as_str().unwrap()))
        .collect();
    assert_eq!(got, vec![(1, 0, "-2"), (2, 1, "1")]);
    assert_eq!(v["norm_sq"], "2");
}

#[test]
fn hermite_table_order_and_csv() {
    let v = json(&["hermite", "--Lmax", "2"]);
    let idx: Vec<(u64, u64)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["m"].as_u64().unwrap(), e["n"].as_u64().unwrap()))
        .collect();
    assert_eq!(idx, vec![(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]);
    let csv = stdout(&["hermite", "1", "1", "--format", "csv"]);
    assert_eq!(csv, "m,n,z,zbar,re,im\n1,1,0,0,-1,0\n1,1,1,1,1,0\n");
}

#[test]
fn deform_examples() {
    assert!(stdout(&["deform", "--alpha", "3/5", "1", "0"]).starts_with("H^g_{1,0} = 3/5 z - 4/5i z~\n"));
    assert!(stdout(&["deform", "--g", "2", "0", "0", "3", "1", "1"]).starts_with("H^g_{1,1} = 6 z z~ - 6\n"));
    let id = json(&["deform", "--g", "1", "0", "0", "1", "2", "2"]);
    let plain = json(&["hermite", "2", "2"]);
    assert_eq!(id["poly"], plain["poly"]);
}

#[test]
fn deform_rejects_bad_input() {
    assert_eq!(code(&["deform", "--g", "1", "2", "2", "4", "1", "0"]), 2);
    assert_eq!(code(&["deform", "--alpha", "0.6", "1", "0"]), 2);
    assert_eq!(code(&["deform", "--alpha", "1", "1", "0"]), 2);
    assert_eq!(code(&["deform", "--alpha", "1/2", "1", "0"]), 2);
    assert_eq!(code(&["hermite", "1"]), 2);
    assert_eq!(code(&["hermite", "-1", "0"]), 2);
}

#[test]
fn float_backend_accepts_decimals() {
    let out = stdout(&["--float", "deform", "--alpha", "0.6", "1", "0"]);
    assert!(out.starts_with("H^g_{1,0} = 0.6 z"), "{out}");
}

#[test]
fn repmat_examples() {
    let v = json(&["repmat", "--g", "2", "0", "0", "3", "2"]);
    assert_eq!(v["L"], 2);
    let diag: Vec<&str> = (0..3).map(|i| v["rows"][i][i]["re"].as_str().unwrap()).collect();
    assert_eq!(diag, vec!["9", "6", "4"]);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                assert_eq!(v["rows"][i][j]["re"], "0");
            }
        }
    }
    let id = json(&["repmat", "2"]);
    assert_eq!(id["rows"][1][1]["re"], "1");
    assert_eq!(id["rows"][0][1]["re"], "0");
    let a = json(&["repmat", "--alpha", "3/5", "1"]);
    // Rows and columns are indexed by the power of z, so L = 1 gives g with
    // both indices reversed.
    assert_eq!(a["rows"][0][0]["re"], "3/5");
    assert_eq!(a["rows"][0][1]["im"], "-4/5");
    assert_eq!(a["rows"][1][0]["im"], "4/5");
}

#[test]
fn dual_is_biorthogonal_at_level_one() {
    let v = json(&["dual", "--alpha", "3/5", "1"]);
    assert_eq!(v["polys"].as_array().unwrap().len(), 2);
    assert_eq!(v["g_dual"], json(&["dual", "--alpha", "3/5", "2"])["g_dual"]);
}

#[test]
fn genfun_matches_deform() {
    let v = json(&["genfun", "--alpha", "3/5", "--order", "3"]);
    for c in v["coefficients"].as_array().unwrap() {
        let (k, l) = (c["k"].to_string(), c["l"].to_string());
        let d = json(&["deform", "--alpha", "3/5", &k, &l]);
        assert_eq!(c["poly"], d["poly"], "k = {k}, l = {l}");
    }
    let real = json(&["genfun", "--real", "--order", "2"]);
    assert_eq!(real["coefficients"].as_array().unwrap().len(), 6);
}

#[test]
fn real_hermite() {
    assert!(stdout(&["real-hermite", "3"]).starts_with("H_3(x1) = 8 x1^3 - 12 x1"));
    let v = json(&["real-hermite", "--Lmax", "4"]);
    assert_eq!(v.as_array().unwrap().len(), 5);
}

#[test]
fn verify_examples() {
    assert_eq!(code(&["verify", "orthonormal", "--Lmax", "6"]), 0);
    assert_eq!(code(&["verify", "biorth", "--alpha", "3/5", "--Lmax", "4"]), 0);
    let v = json(&["verify", "lie", "--alpha", "3/5"]);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["payload"]["class"], "su2_plus_u1");
}

#[test]
fn verify_suites_pass() {
    let cases: &[&[&str]] = &[
        &["verify", "repmat", "--g", "2", "1+i", "1/2", "3"],
        &["verify", "eigen", "--alpha", "3/5"],
        &["verify", "intertwine", "--alpha", "5/13"],
        &["verify", "ncqm", "--alpha", "8/17"],
        &["verify", "qp", "--theta", "3/5", "--gamma", "16/15"],
        &["verify", "routes", "--Lmax", "6"],
        &["verify", "genfun", "--alpha", "3/5", "--Lmax", "4"],
        &["verify", "dual-scaling", "--alpha", "3/5"],
        &["verify", "lie", "--theta-one"],
        &["--float", "verify", "lie", "--alpha", "0.7071067811865476"],
    ];
    for args in cases {
        assert_eq!(code(args), 0, "{args:?}");
    }
}

#[test]
fn float_agrees_with_exact() {
    for suite in [
        &["verify", "biorth", "--alpha", "3/5", "--Lmax", "3"][..],
        &["verify", "ncqm", "--alpha", "3/5"],
        &["verify", "lie", "--alpha", "3/5"],
    ] {
        let exact = json(suite)["status"].clone();
        let mut f = vec!["--backend", "float"];
        f.extend_from_slice(suite);
        assert_eq!(json(&f)["status"], exact, "{suite:?}");
    }
}

#[test]
fn verify_errors_and_usage() {
    assert_eq!(code(&["verify", "bogus"]), 2);
    assert_eq!(code(&["verify", "lie"]), 2);
    assert_eq!(code(&["verify", "lie", "--alpha", "1/2"]), 2);
    assert_eq!(code(&["verify", "qp"]), 2);
    assert_eq!(code(&["verify", "lie", "--alpha", "3/5", "--format", "csv"]), 2);
    assert_eq!(code(&[]), 2);
}

#[test]
fn lie_report_tables() {
    let z = json(&["lie-report", "--alpha", "3/5"]);
    assert_eq!(z["class"], "su2_plus_u1");
    assert_eq!(z["basis"][0], "Z1_theta");
    let x = json(&["lie-report", "--alpha", "3/5", "--basis", "x"]);
    assert_eq!(x["matches_expected"], true);
    let j = json(&["lie-report", "--alpha", "5/13", "--basis", "undeformed"]);
    assert_eq!(j["class"], "su2_plus_u1");
}

#[test]
fn output_is_stable() {
    let a = stdout(&["dual", "--alpha", "5/13", "3", "--format", "json"]);
    let b = stdout(&["dual", "--alpha", "5/13", "3", "--format", "json"]);
    assert_eq!(a, b);
    let threaded = Command::new(env!("CARGO_BIN_EXE_hermite-deform"))
        .args(["dual", "--alpha", "5/13", "3", "--format", "json"])
        .env("HERMITE_DEFORM_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(threaded.stdout).unwrap(), a);
}

#[test]
fn seed_manifest() {
    let out = run(&["--seed-manifest"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&run(&["--seed-manifest", "--format", "json"]).stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["passed"], v["total"]);
    assert!(v["total"].as_u64().unwrap() >= 20);
}
