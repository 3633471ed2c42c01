use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const D4: &str = r#"{"normalized": {"b": -2, "pairs": [[2,1],[2,1],[2,1]]}}"#;
const S237: &str = r#"{"unnormalized": [[2,1],[3,-1],[7,-1]]}"#;

fn seifert(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_seifert"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_sigma_237() {
    let v = json(&seifert(&["verify"], S237));
    assert_eq!(v["verdict"], "equal");
    assert_eq!(v["lhs"], "1");
    assert_eq!(v["rhs"], "1");
}

#[test]
fn normalize_echo() {
    let v = json(&seifert(&["normalize"], S237));
    assert_eq!(v["b"], "-1");
    assert_eq!(v["pairs"], serde_json::json!([["2", "1"], ["3", "1"], ["7", "1"]]));
    assert_eq!(v["e"], "-1/42");
    assert_eq!(v["h_order"], "1");
}

#[test]
fn invariants_d4() {
    let v = json(&seifert(&["invariants"], D4));
    assert_eq!(v["lambda"], "1/2");
    assert_eq!(v["k2_plus_v"], "4");
    assert_eq!(v["k2_plus_v_graph"], "4");
    assert_eq!(v["dp"], "0");
    assert_eq!(v["torsion_can"], "3/8");
    assert_eq!(v["torsion_closed_form"], "3/8");
    assert_eq!(v["sw0_can"], "1/2");
    assert_eq!(v["theta"], "2");
    assert_eq!(v["constant_e"], "0");
    assert_eq!(v["identity"]["verdict"], "equal");
    assert_eq!(v["group"], serde_json::json!(["2", "2"]));
}

#[test]
fn torsion_table_d4() {
    let out = seifert(&["torsion", "--all", "--format", "csv"], D4);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.remove(0), "element,coords,torsion");
    assert_eq!(lines.pop(), Some("sum,,0"));
    let mut values: Vec<&str> = lines.iter().map(|l| l.rsplit(',').next().unwrap()).collect();
    values.sort();
    assert_eq!(values, ["-1/8", "-1/8", "-1/8", "3/8"]);
    assert!(lines.iter().any(|l| l.starts_with("1,") && l.ends_with(",3/8")));
}

#[test]
fn torsion_single_structure() {
    let v = json(&seifert(&["torsion", "--spinc", "0,1,0,0"], D4));
    assert_eq!(v["torsion"], "-1/8");
    assert_eq!(v["sw0"], "0");
    let v = json(&seifert(&["torsion"], D4));
    assert_eq!(v["torsion"], "3/8");
    let v = json(&seifert(&["torsion", "--spinc", "-1,3,0,0"], D4));
    assert_eq!(v["torsion"], "-1/8");
}

#[test]
fn torsion_word_length_is_checked() {
    let out = seifert(&["torsion", "--spinc", "0,1"], D4);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn plumbing_dot_and_json() {
    let out = seifert(&["plumbing"], S237);
    let dot = stdout(&out);
    assert!(dot.starts_with("graph"));
    assert!(dot.contains("-1"));
    let v = json(&seifert(&["plumbing", "--format", "json"], D4));
    assert_eq!(v["weights"], serde_json::json!(["-2", "-2", "-2", "-2"]));
    assert_eq!(v["edges"].as_array().unwrap().len(), 3);
}

#[test]
fn poincare_237() {
    let v = json(&seifert(&["poincare", "--terms", "21"], S237));
    let c: Vec<&str> =
        v["coefficients"].as_array().unwrap().iter().map(|r| r["coefficient"].as_str().unwrap()).collect();
    assert_eq!(c.len(), 22);
    for (l, want) in [(0, "1"), (1, "0"), (6, "1"), (12, "1"), (14, "1"), (20, "1"), (21, "1")] {
        assert_eq!(c[l], want, "l = {l}");
    }
}

#[test]
fn conjecture_gap() {
    assert_eq!(json(&seifert(&["conjecture", "--pg", "1"], S237))["gap"], "0");
    assert_eq!(json(&seifert(&["conjecture", "--pg", "2"], D4))["gap"], "-2");
    assert_eq!(seifert(&["conjecture", "--pg", "-1"], D4).status.code(), Some(2));
}

#[test]
fn input_file_argument() {
    let dir = std::env::temp_dir().join(format!("seifert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d4.json");
    std::fs::write(&path, D4).unwrap();
    let v = json(&seifert(&["normalize", path.to_str().unwrap()], ""));
    assert_eq!(v["h_order"], "4");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn invalid_input_exit_codes() {
    for (doc, needle) in [
        (r#"{"brieskorn": [2,3,4]}"#, "coprime"),
        (r#"{"unnormalized": [[2,1],[3,1]]}"#, ""),
        (r#"{"normalized": {"b": -1, "pairs": [[2,1],[2,1],[2,1]]}}"#, ""),
        (r#"{"normalized": {"b": -1, "pairs": [[2,1],[2,"x"],[2,1]]}}"#, "$.normalized.pairs[1][1]"),
        ("not json", "malformed"),
    ] {
        let out = seifert(&["invariants"], doc);
        assert_eq!(out.status.code(), Some(2), "{doc}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(needle), "{doc}");
    }
    assert_eq!(seifert(&["frobnicate"], D4).status.code(), Some(2));
}

#[test]
fn batch_empty() {
    let out = seifert(&["batch-verify", "--count", "0"], "");
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1);
    let v = json(&seifert(&["batch-verify", "--count", "0", "--format", "json"], ""));
    assert_eq!(v["count"], "0");
    assert_eq!(v["rows"], serde_json::json!([]));
}

#[test]
fn batch_reproducible_across_modes() {
    let args = ["batch-verify", "--count", "25", "--seed", "9", "--max-alpha", "7", "--h-cap", "500"];
    let par = seifert(&args, "");
    assert!(par.status.success());
    let mut seq_args = args.to_vec();
    seq_args.push("--sequential");
    let seq = seifert(&seq_args, "");
    assert_eq!(par.stdout, seq.stdout);
    assert_eq!(stdout(&par).lines().count(), 26);
    assert!(stdout(&par).lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn table_format() {
    let out = seifert(&["verify", "--format", "table"], S237);
    assert_eq!(stdout(&out), "verdict  equal\nlhs      1\nrhs      1\n");
}
