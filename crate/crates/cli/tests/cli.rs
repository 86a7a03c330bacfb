use std::process::{Command, Output};

fn tau_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tau-lab"))
        .args(args)
        .env_remove("TAU_LAB_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bracket_values() {
    let o = tau_lab(&["bracket", "--indices", "2,2,2,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "25/16");
    assert_eq!(stdout(&tau_lab(&["bracket", "--indices", "2,3,3"])).trim(), "5/144");
    // no genus satisfies the dimension constraint
    assert_eq!(stdout(&tau_lab(&["bracket", "--indices", "1"])).trim(), "0");
}

#[test]
fn bracket_json_and_table() {
    let o = tau_lab(&["bracket", "--indices", "0,0,0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "1");
    assert_eq!(v["genus"], 0);

    let o = tau_lab(&["bracket-table", "--genus", "2", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 7);
    let csv = stdout(&tau_lab(&["bracket-table", "--genus", "2", "--format", "csv"]));
    assert_eq!(csv.lines().next(), Some("indices,genus,value"));
    assert!(csv.contains("\"3,4\",2,11/1920"));
}

#[test]
fn hurwitz_routes_and_json() {
    for method in ["brute", "frobenius", "closed"] {
        let o = tau_lab(&["hurwitz", "--kind", "onepart", "--genus", "1", "--profile", "3", "--method", method]);
        assert_eq!(stdout(&o).trim(), "2", "{method}");
    }
    let o = tau_lab(&["hurwitz", "--kind", "simple", "--genus", "0", "--profile", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "1");
    assert_eq!(v["query"]["kind"], "simple");
    assert_eq!(v["method"], "frobenius");
}

#[test]
fn cache_env_overrides_flag() {
    let dir = tempfile::tempdir().unwrap();
    let env_path = dir.path().join("env.jsonl");
    let flag_path = dir.path().join("flag.jsonl");
    let o = Command::new(env!("CARGO_BIN_EXE_tau-lab"))
        .args(["hurwitz", "--kind", "onepart", "--genus", "1", "--profile", "2,1"])
        .arg("--cache")
        .arg(&flag_path)
        .env("TAU_LAB_CACHE", &env_path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(!flag_path.exists());
    let text = std::fs::read_to_string(&env_path).unwrap();
    assert_eq!(text.lines().count(), 1);
    let line: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(line["value"], stdout(&o).trim());
}

#[test]
fn symmetric_functions() {
    assert_eq!(stdout(&tau_lab(&["char", "--mu", "2,1", "--lambda", "3"])).trim(), "-1");
    let o = tau_lab(&["schur", "--mu", "2,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn hodge_routes() {
    let o = tau_lab(&["hodge", "--genus", "1", "--indices", "1", "--k", "0"]);
    assert_eq!(stdout(&o).trim(), "1/24");
    let o = tau_lab(&["hodge", "--genus", "1", "--indices", "0", "--k", "1", "--route", "pde"]);
    assert_eq!(stdout(&o).trim(), "1/24");
    let o = tau_lab(&["hodge", "--genus", "2", "--indices", "1", "--k", "0"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "corner", "--max-size", "8"][..],
        &["verify", "ck", "--kmax", "6"],
        &["verify", "kdv"],
        &["verify", "oracle", "--max-degree", "4", "--max-m", "5"],
    ] {
        let o = tau_lab(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(stdout(&o).starts_with("PASS"), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn verify_hirota_on_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = tau_lab(&["series", "--kind", "lp2h", "--weight", "7", "--aux", "3", "--format", "json"]);
    let path = dir.path().join("tau.json");
    std::fs::write(&path, &good.stdout).unwrap();
    let o = tau_lab(&["verify", "hirota", "--i", "2", "--j", "2", "--tau", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("max weight checked 3"), "{}", stdout(&o));

    // 1 + p_1^2 is not a tau function
    let bad = r#"{"family":"P","caps":{"weight":6,"aux":0},"terms":[{"exp":[0],"coeff":"1"},{"exp":[0,2],"coeff":"1"}]}"#;
    std::fs::write(&path, bad).unwrap();
    let o = tau_lab(&["verify", "hirota", "--i", "2", "--j", "2", "--tau", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tau_lab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tau_lab(&["bracket", "--indices", "x"]).status.code(), Some(2));
    assert_eq!(tau_lab(&["bracket", "--bogus"]).status.code(), Some(2));
    assert_eq!(tau_lab(&["series", "--kind", "f", "--weight", "0"]).status.code(), Some(2));
    assert_eq!(tau_lab(&["hurwitz", "--kind", "onepart", "--genus", "0", "--profile", "0"]).status.code(), Some(2));
    assert_eq!(tau_lab(&["verify", "ck", "--kmax", "40"]).status.code(), Some(2));
}

#[test]
fn series_json_round_trips() {
    let o = tau_lab(&["series", "--kind", "f", "--weight", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["family"], "T_Q");
    let again = tau_lab(&["series", "--kind", "f", "--weight", "5", "--format", "json"]);
    assert_eq!(o.stdout, again.stdout);
}
