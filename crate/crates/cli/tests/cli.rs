use std::process::Command;

fn eightv(args: &[&str]) -> (bool, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_eightv")).args(args).env_remove("EIGHTV_OUTPUT_DIR").output().expect("binary runs");
    (out.status.success(), String::from_utf8(out.stdout).expect("utf8"))
}

#[test]
fn sequences_scaled_family() {
    let (ok, s) = eightv(&["sequences", "--family", "H", "--spec", "J2", "--m-max", "4", "--format", "json"]);
    assert!(ok);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    let e = &v.as_array().unwrap()[1];
    assert_eq!(e["m"], 2);
    assert_eq!(e["scale"], "2^{m-1}");
    assert_eq!(e["coeffs"], serde_json::json!(["7", "0", "1"]));
}

#[test]
fn sequences_trivial() {
    let (ok, s) = eightv(&["sequences", "--family", "H", "--spec", "none", "--m-max", "1"]);
    assert!(ok);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v[0]["coeffs"], serde_json::json!(["1"]));
}

#[test]
fn small_recurrence_run() {
    let (ok, s) = eightv(&["verify-recurrences", "--m-max", "3", "--m-div", "5", "--format", "json"]);
    assert!(ok);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["passed"], true);
    let again = eightv(&["verify-recurrences", "--m-max", "3", "--m-div", "5", "--format", "json"]).1;
    assert_eq!(s, again);
}

#[test]
fn report_file_and_csv() {
    let dir = std::env::temp_dir().join(format!("eightv-cli-{}", std::process::id()));
    let path = dir.join("gs.csv");
    let (ok, _) = eightv(&["verify-groundstate", "--sizes", "3", "--nomes", "0.2", "--draws", "1", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert!(ok);
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("suite,check,residual,tolerance,passed,detail"));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn usage_errors() {
    let (ok, _) = eightv(&["verify-groundstate", "--sizes", "4"]);
    assert!(!ok);
    let (ok, _) = eightv(&["sequences", "--spec", "J5"]);
    assert!(!ok);
    let (ok, _) = eightv(&["frobnicate"]);
    assert!(!ok);
}
