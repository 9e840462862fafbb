use std::path::PathBuf;
use std::process::{Command, Output};

fn psupp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psupp")).args(args).env_remove("PSUPP_CACHE_DIR").output().expect("binary runs")
}

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json")).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_verified_exits_zero() {
    let o = psupp(&["analyze", &corpus("graph_x2"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "verified");
    assert_eq!(v["primes"].as_array().unwrap().len(), 4);
}

#[test]
fn hypothesis_not_met_exits_zero() {
    let o = psupp(&["analyze", &corpus("nonholonomic_a2")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hypothesis_not_met"));
}

#[test]
fn exhausted_budget_is_inconclusive() {
    let o = psupp(&["analyze", &corpus("conormal_airy"), "--primes", "5", "--budget-pairs", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "inconclusive");
}

#[test]
fn input_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"name":"a","n":1,"kind":"cyclic","generators":["d1 +"],"primes":[3]}"#).unwrap();
    let o = psupp(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("generators[0]"));

    let o = psupp(&["analyze", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));

    let o = psupp(&["pcurvature", &corpus("airy"), "--prime", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn overrides_apply() {
    let o = psupp(&["analyze", &corpus("graph_x2"), "--primes", "3,5", "--samples", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ps: Vec<u64> = v["primes"].as_array().unwrap().iter().map(|r| r["p"].as_u64().unwrap()).collect();
    assert_eq!(ps, vec![3, 5]);
    assert_eq!(v["primes"][0]["lagrangian"]["points_tested"], 3);
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_psupp"))
            .args(["analyze", &corpus("constant"), "--format", "json"])
            .env("PSUPP_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 4);
    let second = run();
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timings_ms");
        v
    };
    assert_eq!(strip(&first), strip(&second));
}

#[test]
fn single_prime_commands() {
    let o = psupp(&["psupport", &corpus("kummer_prime_field"), "--prime", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "p = 5 over F_5: V(Y1), dim 1, degree 1\n");

    let o = psupp(&["pcurvature", &corpus("nilpotent"), "--prime", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nilpotency_index"], 2);

    let o = psupp(&["holonomy", &corpus("airy")]);
    assert!(stdout(&o).starts_with("d = 1, e = 2, holonomic = true"), "{}", stdout(&o));

    let o = psupp(&["cartier", "--prime", "3", "x1^2"]);
    assert_eq!(stdout(&o), "C(x1^2*dx1) = dX1\n");
}

#[test]
fn examples_subset() {
    let o = psupp(&["examples", "--only", "constant,airy"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("airy (n = 1, cyclic): verified"));
    assert!(out.contains("constant (n = 1, cyclic): verified"));
    assert!(!out.contains("kummer"));
}
