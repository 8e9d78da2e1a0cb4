use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn maxsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxsym")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn write_a1(dir: &Path) -> String {
    let p = dir.join("a1.json");
    let out = maxsym(&["build-aell", "--ell", "1", "--output", p.to_str().unwrap()]);
    assert!(out.status.success());
    p.to_str().unwrap().to_string()
}

#[test]
fn build_aell_three_has_rank_ten() {
    let out = maxsym(&["build-aell", "--ell", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["rank"], 10);
    assert_eq!(doc["labels"].as_array().unwrap().len(), 10);
}

#[test]
fn build_atilde_ranks() {
    for ell in 1..=3 {
        let doc = json(&maxsym(&["build-atilde", "--ell", &ell.to_string()]));
        assert_eq!(doc["rank"], 4 * ell - 1);
    }
}

#[test]
fn emitted_algebra_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("at2.json");
    assert!(maxsym(&["build-atilde", "--ell", "2", "--output", p.to_str().unwrap()]).status.success());
    let out = maxsym(&["validate", "--algebra", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["algebra"]["round_trip"], true);
    assert_eq!(r["result"]["algebra"]["graded_ranks"], serde_json::json!([2, 3, 2]));
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn build_schur_ranks_sum_over_degrees() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = write_a1(dir.path());
    let out = maxsym(&["build-schur", "--algebra", &a1, "--n", "2", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let degrees: Vec<u64> = doc["degrees"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    assert!(degrees.iter().all(|&d| d <= 4));
    // M_2(A_1) has four basis elements in each of degrees 0 and 2. S_2-orbits on pairs:
    // 4 + 6 = 10 in degrees 0 and 4, and the 16 + 16 mixed pairs swap into 16 orbits in degree 2.
    let count = |k| degrees.iter().filter(|&&d| d == k).count();
    assert_eq!((count(0), count(2), count(4)), (10, 16, 10));
    assert_eq!(doc["rank"], 36);
    assert_eq!(doc["weight_idempotents"].as_array().unwrap().len(), 3);
}

#[test]
fn schur_quasi_unit_via_cli() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = write_a1(dir.path());
    let s = dir.path().join("s.json");
    let s = s.to_str().unwrap();
    assert!(maxsym(&["build-schur", "--algebra", &a1, "--n", "2", "--d", "2", "--output", s]).status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(s).unwrap()).unwrap();
    let xi: Vec<&str> = doc["xi_omega"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    let xi = xi.join(",");
    for p in ["2", "3"] {
        let out = maxsym(&["check-quasiunit", "--algebra", s, "--element", &xi, "--prime", p, "--degree-zero"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["result"]["quasi_unit"]["verdict"], "yes");
        let out = maxsym(&[
            "certify-quasiunit",
            "--algebra",
            s,
            "--decomposition",
            s,
            "--first",
            "1",
            "--prime",
            p,
            "--degree-zero",
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["result"]["certificate"]["verdict"], "certified");
    }
}

#[test]
fn check_form_canonical_and_bad() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = write_a1(dir.path());
    let out = maxsym(&["check-form", "--algebra", &a1]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["gram_det"], "-1");
    // t(e) = 1 is not a degree-2 form; t(c) = 3 is symmetric but not perfect over Z.
    let out = maxsym(&["check-form", "--algebra", &a1, "--form", "1,0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = maxsym(&["check-form", "--algebra", &a1, "--form", "0,3"]);
    assert_eq!(json(&out)["result"]["gram_det"], "-9");
}

#[test]
fn check_maxsym_on_fixture_exits_zero() {
    let out = maxsym(&["check-maxsym", "--sandwich", fixture("positive_micro.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["status"], "certified");
    assert_eq!(r["primes"], serde_json::json!([2]));
}

#[test]
fn check_maxsym_on_negative_control_exits_one() {
    let out = maxsym(&["check-maxsym", "--sandwich", fixture("negative_control_p2.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["failed_hypothesis"], "cond_a");
}

#[test]
fn oracle_on_both_fixtures() {
    let pos = fixture("positive_micro.json");
    let out = maxsym(&["oracle-intermediate", "--sandwich", pos.to_str().unwrap(), "--prime", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["symmetric_proper"], serde_json::json!([]));
    let neg = fixture("negative_control_p2.json");
    let out = maxsym(&["oracle-intermediate", "--sandwich", neg.to_str().unwrap(), "--prime", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["symmetric_proper"], serde_json::json!([1]));
}

#[test]
fn oracle_cap_exceeded_exits_two() {
    let pos = fixture("positive_micro.json");
    let out = maxsym(&["oracle-intermediate", "--sandwich", pos.to_str().unwrap(), "--prime", "2", "--subgroup-cap", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reruns_are_byte_identical() {
    let pos = fixture("positive_micro.json");
    let args = ["check-maxsym", "--sandwich", pos.to_str().unwrap(), "--seed", "7"];
    let a = maxsym(&args);
    let b = maxsym(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = maxsym(&["check-maxsym", "--sandwich", pos.to_str().unwrap(), "--seed", "7", "--jobs", "4"]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn malformed_input_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    // Unit law broken: the listed unit is zero.
    std::fs::write(
        &bad,
        r#"{"base":"Z","rank":1,"labels":["e"],"degrees":[0],"parities":[0],"unit":["0"],"structure_constants":[[0,0,0,"1"]]}"#,
    )
    .unwrap();
    let out = maxsym(&["validate", "--algebra", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unit law"));
    let out = maxsym(&["validate", "--algebra", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_verb_is_rejected() {
    let out = maxsym(&["frobnicate"]);
    assert!(!out.status.success());
}

#[test]
fn timing_is_opt_in() {
    let out = json(&maxsym(&["validate", "--sandwich", fixture("negative_control_p2.json").to_str().unwrap()]));
    assert!(out.get("wall_clock_ms").is_none());
    let out = json(&maxsym(&[
        "validate",
        "--timing",
        "--sandwich",
        fixture("negative_control_p2.json").to_str().unwrap(),
    ]));
    assert!(out["wall_clock_ms"].is_u64());
}
