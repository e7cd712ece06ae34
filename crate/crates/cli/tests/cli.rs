use std::process::{Command, Output};

use serde_json::Value;

fn hetcong(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hetcong"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn atomic_solve_reports_poa_of_aligned_pair() {
    let out = hetcong(&["solve", "gen:fig4?a=10", "--mode", "atomic"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["poa"], 10.0);
    assert_eq!(report["so"]["cost"], 2.0);
    assert_eq!(report["worst_ne"]["cost"], 20.0);
}

#[test]
fn unbounded_instance_serializes_infinite_poa() {
    let out = hetcong(&["solve", "--gen", "gen:unbounded"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["poa"], "inf");
}

#[test]
fn matrix_game_without_pne_exits_with_code_two() {
    let out = hetcong(&["solve", "gen:table3", "--mode", "atomic"]);
    assert_eq!(out.status.code(), Some(2));
    let report = json(&out);
    assert!(report["poa"].is_null());
    assert_eq!(report["equilibria"], 0);
}

#[test]
fn matrix_game_is_rejected_in_nonatomic_mode() {
    let out = hetcong(&["solve", "gen:table3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--mode atomic"));
}

#[test]
fn malformed_instance_names_the_field() {
    let dir = std::env::temp_dir().join(format!("hetcong-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{"nodes":["s","t"],"edges":[{"id":"e","tail":"s","head":"t",
            "delays":[{"terms":[{"coeff":-1,"exp":[1]}],"const":0}]}],
            "commodities":[{"source":"s","sink":"t","demand":1}]}"#,
    )
    .unwrap();
    let out = hetcong(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("edges[0].delays[0].terms[0].coeff"),
        "{stderr}"
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unknown_generator_is_an_input_error() {
    let out = hetcong(&["solve", "gen:nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bounds_include_decomposable_value() {
    let out = hetcong(&["bounds", "gen:fig2?k=3&theta=2&a=2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let entry = report["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["name"] == "nonatomic_decomposable_poly")
        .expect("decomposable bound listed");
    assert_eq!(entry["value"], 18.0);
    assert_eq!(entry["applicable"], true);
}

#[test]
fn bounds_csv_has_header_and_rows() {
    let out = hetcong(&[
        "bounds",
        "gen:fig4?a=10",
        "--mode",
        "atomic",
        "--measure",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("name,value,theorem,applicable,variant,measured,violated")
    );
    let first = lines.next().unwrap();
    assert!(first.starts_with("atomic_decomposable_affine,"));
    assert!(first.ends_with(",10,false"));
}

#[test]
fn reproduce_table3_passes_and_writes_summary() {
    let out = hetcong(&["reproduce", "table3"]);
    assert_eq!(out.status.code(), Some(0));
    let summary = json(&out);
    assert_eq!(summary["target"], "table3");
    assert_eq!(summary["pass"], true);
}

#[test]
fn reproduce_root_accepts_alias() {
    let out = hetcong(&["reproduce", "appendix-a", "--t", "3", "--theta", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
}

#[test]
fn report_can_be_written_to_file() {
    let path = std::env::temp_dir().join(format!("hetcong-out-{}.json", std::process::id()));
    let out = hetcong(&[
        "solve",
        "gen:fig4?a=2",
        "--mode",
        "atomic",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["poa"], 2.0);
    std::fs::remove_file(&path).unwrap();
}
