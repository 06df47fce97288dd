use appell4_cli::commands::{EXIT_EVAL, EXIT_FAIL, EXIT_OK, EXIT_USAGE, SEED_ENV, SWEEP_HEADER};
use appell4_cli::{run, Outcome};
use serde_json::Value;

fn go(args: &[&str]) -> Outcome {
    run(std::iter::once("appell4").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(o.report.as_deref().expect("report")).expect("valid json")
}

fn re(v: &Value) -> f64 {
    v[0].as_f64().unwrap()
}

#[test]
fn eval_terminating_first_analogue() {
    let o = go(&[
        "eval", "--fn", "F41", "--a", "1", "--b", "1", "--c1", "2", "--c2", "2", "--t1", "4",
        "--t2", "4", "--k1", "1", "--k2", "1", "--x", "0.1", "--y", "0.1",
    ]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    assert_eq!(v["function"], "F41");
    assert_eq!(v["divergence_flag"], false);
    assert_eq!(v["terms_used"], 25);
    assert!((re(&v["value"]) - 1.976_984_96).abs() < 1e-8);
}

#[test]
fn eval_classical_at_origin() {
    let o = go(&["eval", "--fn", "f4", "--x", "0", "--y", "0"]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    assert_eq!(re(&v["value"]), 1.0);
    assert_eq!(v["value"][1].as_f64(), Some(0.0));
}

#[test]
fn eval_accepts_complex_and_negative_values() {
    let o = go(&[
        "eval", "--fn", "F42", "--a", "0.5,0.25", "--t", "-1.5", "--k", "2", "--x", "-0.05,0.02",
    ]);
    assert_eq!(o.code, EXIT_OK, "{:?}", o.message);
    assert_eq!(json(&o)["params"]["k"], 2);
}

#[test]
fn eval_general_double_series() {
    let o = go(&[
        "eval", "--fn", "KdF", "--coupled-num", "1", "--x-den", "1", "--x", "0.5", "--y", "0",
        "--m", "80",
    ]);
    assert_eq!(o.code, EXIT_OK, "{:?}", o.message);
    assert!((re(&json(&o)["value"]) - 0.5f64.exp()).abs() < 1e-14);
}

#[test]
fn eval_flags_divergence() {
    let o = go(&[
        "eval", "--fn", "F41", "--k1", "1", "--k2", "0", "--t1", "0.5", "--x", "0.05", "--y", "0",
    ]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    assert_eq!(v["divergence_flag"], true);
    assert!(v["tail_estimate"].is_null());
}

#[test]
fn eval_pole_exits_with_evaluation_code() {
    let o = go(&["eval", "--c1", "-1"]);
    assert_eq!(o.code, EXIT_EVAL);
    assert!(o.message.unwrap().contains("evaluation failed"));
}

#[test]
fn usage_errors() {
    assert_eq!(go(&["eval", "--bogus"]).code, EXIT_USAGE);
    assert_eq!(go(&["eval", "--a", "x"]).code, EXIT_USAGE);
    assert_eq!(go(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(go(&["audit", "--seed", "1", "--family", "Z"]).code, EXIT_USAGE);
    assert_eq!(go(&["--help"]).code, EXIT_OK);
}

#[test]
fn audit_is_byte_identical_across_runs() {
    let args = ["audit", "--seed", "9", "--draws", "2", "--family", "E"];
    let a = go(&args);
    let b = go(&args);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.report, b.report);
    let seq = go(&["audit", "--seed", "9", "--draws", "2", "--family", "E", "--sequential"]);
    assert_eq!(a.report, seq.report);
    let v = json(&a);
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 32);
    for e in arr {
        for key in ["id", "paper_anchor", "draws", "passes", "worst_rel_residual", "status"] {
            assert!(e.get(key).is_some(), "{key}");
        }
        assert_eq!(e["status"], "verified");
    }
}

#[test]
fn audit_filters_and_suspected_entries() {
    let o = go(&[
        "audit", "--seed", "3", "--draws", "2", "--family", "D", "--target", "F41",
        "--include-suspected",
    ]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    let status = |id: &str| {
        v.as_array().unwrap().iter().find(|e| e["id"] == id).unwrap()["status"]
            .as_str()
            .unwrap()
            .to_string()
    };
    assert_eq!(status("F41.rec.5"), "suspected_typo");
    assert_eq!(status("F41.rec.5.corrected"), "verified");
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn audit_regression_exits_with_failure() {
    let o = go(&["audit", "--seed", "1", "--draws", "1", "--family", "A", "--tolerance", "1e-300"]);
    assert_eq!(o.code, EXIT_FAIL);
    assert!(json(&o).as_array().unwrap().iter().any(|e| e["status"] == "regression"));
}

#[test]
fn audit_summed_mode() {
    let o = go(&[
        "audit", "--seed", "4", "--draws", "2", "--family", "B", "--mode", "summed-terminating",
        "--terminating-t", "4",
    ]);
    assert_eq!(o.code, EXIT_OK, "{:?}", o.message);
}

#[test]
fn seed_from_environment() {
    std::env::set_var(SEED_ENV, "17");
    let env = go(&["audit", "--draws", "1", "--family", "C"]);
    std::env::set_var(SEED_ENV, "not-a-seed");
    let bad = go(&["audit", "--draws", "1", "--family", "C"]);
    std::env::remove_var(SEED_ENV);
    let explicit = go(&["audit", "--seed", "17", "--draws", "1", "--family", "C"]);
    assert_eq!(env.report, explicit.report);
    assert_eq!(bad.code, EXIT_USAGE);
}

#[test]
fn report_goes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = go(&["eval", "--fn", "F4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.report.is_none());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap()["function"], "F4");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(
        &path,
        r#"{"eval": {"function": "F41", "a": [0.5, 0.0], "x": 0.2, "k1": 1, "t1": 3}}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let from_file = json(&go(&["--config", p, "eval"]));
    assert_eq!(from_file["function"], "F41");
    assert_eq!(re(&from_file["params"]["a"]), 0.5);
    let overridden = json(&go(&["--config", p, "eval", "--a", "0.75"]));
    assert_eq!(re(&overridden["params"]["a"]), 0.75);
    assert_eq!(re(&overridden["params"]["x"]), 0.2);
    std::fs::write(&path, r#"{"eval": {"nonsense": 1}}"#).unwrap();
    assert_eq!(go(&["--config", p, "eval"]).code, EXIT_USAGE);
    assert_eq!(go(&["--config", "/nonexistent/cfg.json", "eval"]).code, EXIT_USAGE);
}

#[test]
fn quadcheck_paths() {
    let o = go(&["quadcheck", "--k", "0", "--t1", "0.5", "--t2", "0.5"]);
    assert_eq!(o.code, EXIT_OK, "{:?}", o.message);
    assert_eq!(json(&o)["pass"], true);
    let both = go(&["quadcheck", "--k", "1", "--rep", "both"]);
    assert_eq!(both.code, EXIT_OK);
    let v = json(&both);
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);
    assert!(v["rep_agreement"].as_f64().unwrap() < 1e-9);
    assert_eq!(go(&["quadcheck", "--k", "1", "--t1", "0.5"]).code, EXIT_EVAL);
    assert_eq!(go(&["quadcheck", "--order", "1"]).code, EXIT_USAGE);
    assert_eq!(go(&["quadcheck", "--k", "1", "--tolerance", "1e-300"]).code, EXIT_FAIL);
}

#[test]
fn sweep_rows_and_header() {
    let o = go(&["sweep"]);
    assert_eq!(o.code, EXIT_OK);
    let text = o.report.unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], SWEEP_HEADER);
    assert_eq!(lines.len(), 37);
    let boundary = go(&["sweep", "--step", "0.25"]).report.unwrap();
    assert!(boundary.lines().any(|l| l == "0.25,0.25,false,0,false"));
    assert_eq!(go(&["sweep", "--step", "0"]).code, EXIT_USAGE);
    assert_eq!(go(&["sweep", "--m", "4"]).code, EXIT_USAGE);
}
