use std::process::{Command, Output};

use serde_json::Value;

fn powsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powsum"))
        .args(args)
        .env_remove("POWSUM_PRECISION_START")
        .env_remove("POWSUM_PRECISION_MAX")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn exact_theorem_grid_exits_zero() {
    let o = powsum(&["check", "theorem1", "--n-max", "20", "--r", "1,2", "--alpha", "2", "--mode", "exact"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["summary"]["holds"], 40);
    assert_eq!(v["summary"]["fails"], 0);
}

#[test]
fn starved_precision_is_indeterminate() {
    let o = powsum(&[
        "check", "martins", "--n-min", "200", "--n-max", "201", "--r", "5/2",
        "--precision-start", "16", "--precision-max", "16",
    ]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["summary"]["indeterminate"], 2);
}

#[test]
fn saved_findings_exit_one() {
    let mut v: Value = serde_json::from_str(include_str!("golden/theorem1.json")).unwrap();
    let rec = &mut v["records"][1];
    rec["outcome"] = Value::from("fails");
    rec["witness"] = serde_json::json!({"params": {"n": "2"}, "lhs": "25/33", "rhs": "49/69"});
    v["summary"]["holds"] = Value::from(1);
    v["summary"]["fails"] = Value::from(1);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let o = powsum(&["report", "--in", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8(o.stdout).unwrap().contains(",fails,"));

    // a summary that disagrees with the records is rejected
    v["summary"]["fails"] = Value::from(0);
    std::fs::write(&path, v.to_string()).unwrap();
    assert_ne!(code(&powsum(&["report", "--in", path.to_str().unwrap()])), 0);
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["frobnicate"][..],
        &["check", "alzer", "--r", "1", "--bogus"],
        &["check", "alzer", "--r", "0.5"],
        &["check", "nosuchcheck", "--r", "1"],
        &["check", "alzer", "--r", ""],
        &["replay", "--n", "1", "--r", "1", "--alpha", "1"],
        &["check", "martins", "--r", "1", "--mode", "exact"],
    ] {
        let o = powsum(args);
        assert_eq!(code(&o), 64, "{args:?}");
    }
    assert_eq!(code(&powsum(&["--help"])), 0);
}

#[test]
fn replay_prints_every_step() {
    let o = powsum(&["replay", "--n", "2", "--r", "2", "--alpha", "2", "--mode", "exact"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    for step in ["base_gap_nonnegative", "dd_dominance", "direct_monotonicity", "25/33", "49/69"] {
        assert!(text.contains(step), "missing {step}");
    }
}

#[test]
fn scan_is_deterministic() {
    let args = ["scan", "problem1", "--n-max", "15", "--r", "1,3/2", "--rprime", "2,3"];
    let a = json(&powsum(&args));
    let b = json(&powsum(&args));
    assert_eq!(a["records"], b["records"]);
    assert_eq!(a["campaign"]["id"], b["campaign"]["id"]);
    let recs = a["records"].as_array().unwrap();
    assert_eq!(recs.len(), 4 * 15);
    assert!(recs.iter().all(|r| r.get("covered_by_corollary1").is_some()));
}

#[test]
fn exit_code_tracks_the_summary() {
    for (name, r, p) in [("alzer", "1/2,2", "128"), ("bennett_r1_upper", "1,3", "128"), ("theorem1", "3/2", "16")] {
        let o = powsum(&["check", name, "--n-min", "90", "--n-max", "92", "--r", r, "--alpha", "5/2", "--precision-max", p, "--precision-start", p]);
        let s = &json(&o)["summary"];
        let clean = s["fails"] == 0 && s["indeterminate"] == 0;
        assert_eq!(code(&o) == 0, clean, "{name}");
    }
}

#[test]
fn report_round_trip_to_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let p = path.to_str().unwrap();
    let o = powsum(&["check", "alzer", "--n-max", "6", "--r", "1,2", "--out", p]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());

    let csv = powsum(&["report", "--in", p, "--format", "csv"]);
    assert_eq!(code(&csv), 0);
    let text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("check,n,r,"));
    assert_eq!(lines.count(), 12);

    let again = powsum(&["report", "--in", p]);
    let orig: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json(&again), orig);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing/dir/out.json");
    let o = powsum(&["check", "alzer", "--n-max", "2", "--r", "1", "--out", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 74);
}

#[test]
fn precision_env_and_flags() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_powsum"));
        c.args(["check", "alzer", "--n-max", "2", "--r", "1"]).args(extra);
        c.env_remove("POWSUM_PRECISION_MAX");
        match env {
            Some(v) => c.env("POWSUM_PRECISION_START", v),
            None => c.env_remove("POWSUM_PRECISION_START"),
        };
        let o = c.output().unwrap();
        assert_eq!(code(&o), 0);
        json(&o)["grid"]["precision_start"].as_u64().unwrap()
    };
    assert_eq!(run(None, &[]), 128);
    assert_eq!(run(Some("256"), &[]), 256);
    assert_eq!(run(Some("256"), &["--precision-start", "512"]), 512);
}

#[test]
fn report_schema_matches_golden() {
    let o = powsum(&["check", "theorem1", "--n-max", "2", "--r", "2", "--alpha", "2", "--mode", "exact"]);
    let mut v = json(&o);
    v["wall_time_ms"] = Value::from(0);
    let golden: Value = serde_json::from_str(include_str!("golden/theorem1.json")).unwrap();
    assert_eq!(v, golden);
}
