use std::process::Command;

use unitgen::cli::{
    emit_report, run, BelcherOutput, Format, EXIT_CONFIG, EXIT_EXHAUSTED, EXIT_HYPOTHESIS, EXIT_OK,
};

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["unitgen"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn diagnostic(err: &str) -> serde_json::Value {
    serde_json::from_str(err.lines().last().expect("diagnostic line")).unwrap()
}

#[test]
fn density_report_columns() {
    let (code, out, _) = run_args(&["density", "--x", "100,1000", "--truncation", "500"]);
    assert_eq!(code, EXIT_OK);
    let header = out.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "x\tN\tN/x\tD_lo\tD_hi\trel_err");
    let rows: Vec<&str> = out
        .lines()
        .filter(|l| l.starts_with(|c: char| c.is_ascii_digit()))
        .collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("100\t34\t"));
}

#[test]
fn empty_schedule_is_header_only() {
    let (code, out, _) = run_args(&["belcher", "--bound", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "d\tunit_generated\n-2\tfalse\n-1\ttrue\n2\ttrue\n");
    let empty = emit_report(&BelcherOutput { rows: vec![] }, Format::Tsv);
    assert_eq!(empty, b"d\tunit_generated\n");
}

#[test]
fn reports_are_byte_identical_across_threads() {
    for args in [
        vec!["density", "--x", "100,2000", "--truncation", "2000"],
        vec!["count", "--x", "10,1000", "--ideal", "3,0", "--beta", "1,1"],
        vec![
            "tower", "--order", "Z[sqrt5]", "--eta", "1,2", "--format", "json",
        ],
        vec!["belcher"],
    ] {
        let mut outputs = Vec::new();
        for t in ["1", "2", "7"] {
            let mut a = args.clone();
            a.extend(["--threads", t]);
            let (code, out, _) = run_args(&a);
            assert_eq!(code, EXIT_OK, "{a:?}");
            outputs.push(out);
        }
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}

#[test]
fn hypothesis_exit_codes() {
    let (code, _, err) = run_args(&["tower", "--field", "qsqrt2"]);
    assert_eq!(code, EXIT_HYPOTHESIS);
    let d = diagnostic(&err);
    assert_eq!(d["error"], "hypothesis");
    assert!(d["remedy"].as_str().unwrap().contains("sqrt(5)"));
    let (code, _, _) = run_args(&[
        "density", "--order", "Z[sqrt5]", "--gap", "--eta", "1,2", "--field", "qi",
    ]);
    assert_eq!(code, EXIT_CONFIG);
    let (code, _, _) = run_args(&["density", "-m", "1"]);
    assert_eq!(code, EXIT_HYPOTHESIS);
    let (code, _, _) = run_args(&["tower", "--order", "Z[sqrt5]", "--eta", "0,1"]);
    assert_eq!(code, EXIT_HYPOTHESIS);
}

#[test]
fn exhaustion_exit_codes() {
    let (code, _, err) = run_args(&[
        "tower",
        "--order",
        "Z[sqrt5]",
        "--eta",
        "1,2",
        "--search-bound",
        "0",
    ]);
    assert_eq!(code, EXIT_EXHAUSTED);
    assert_eq!(diagnostic(&err)["error"], "exhausted");
    let (code, _, _) = run_args(&[
        "tower",
        "--order",
        "Z[sqrt5]",
        "--eta",
        "1,2",
        "--max-steps",
        "0",
    ]);
    assert_eq!(code, EXIT_EXHAUSTED);
}

#[test]
fn config_exit_codes() {
    for args in [
        vec!["belcher", "-d", "12"],
        vec!["belcher", "-d", "1"],
        vec!["density", "--field", "nowhere.json"],
        vec!["density", "--order", "Z[7theta]"],
        vec!["density", "--x", "1000,100"],
        vec!["density", "--eta", "1,2,3"],
        vec!["count", "--ideal", "0,0"],
        vec!["frobnicate"],
        vec!["belcher", "--threads", "0"],
    ] {
        let (code, _, err) = run_args(&args);
        assert_eq!(code, EXIT_CONFIG, "{args:?}");
        assert_eq!(diagnostic(&err)["exit_code"], 4, "{args:?}");
    }
}

#[test]
fn verify_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tower.json");
    let p = path.to_str().unwrap();
    let (code, _, _) = run_args(&[
        "tower", "--order", "Z[sqrt5]", "--eta", "1,2", "--format", "json", "-o", p,
    ]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = run_args(&["verify", "--tower", p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("discriminants_coprime\ttrue"));

    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["tower"]["steps"][0]["omega"] = serde_json::json!([0, 2]);
    std::fs::write(&path, v.to_string()).unwrap();
    let (code, out, _) = run_args(&["verify", "--tower", p, "--format", "json"]);
    assert_eq!(code, EXIT_HYPOTHESIS);
    let r: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["verification"]["discriminants_coprime"], false);
    assert_eq!(r["verification"]["eta_units"], true);
}

#[test]
fn field_spec_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, unitgen::fields::QSQRT5_JSON).unwrap();
    let (code, out, _) = run_args(&[
        "tower",
        "--field",
        path.to_str().unwrap(),
        "--order",
        "Z[sqrt5]",
        "--eta",
        "1,2",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("# final_index\t1"));
    std::fs::write(&path, r#"{"min_poly": [1, 0, -1]}"#).unwrap();
    let (code, _, _) = run_args(&["tower", "--field", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_CONFIG);
}

#[test]
fn binary_honours_thread_variable() {
    let bin = env!("CARGO_BIN_EXE_unitgen");
    let go = |threads: &str| {
        Command::new(bin)
            .args(["count", "--x", "10,500"])
            .env("UNITGEN_THREADS", threads)
            .output()
            .unwrap()
    };
    let a = go("1");
    let b = go("4");
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bad = go("many");
    assert_eq!(bad.status.code(), Some(EXIT_CONFIG));
    let tower = Command::new(bin)
        .args(["tower", "--field", "qsqrt2"])
        .output()
        .unwrap();
    assert_eq!(tower.status.code(), Some(EXIT_HYPOTHESIS));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert!(help.status.success());
}
