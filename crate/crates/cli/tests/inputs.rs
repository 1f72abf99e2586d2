//! Input validation, flag handling and the binary's streams.

use std::io::Write;
use std::process::{Command, Stdio};

use coarse_cli::{mask_timings, run_text, ExitClass, Options};
use serde_json::Value;

fn run(text: &str) -> (ExitClass, Value) {
    run_with(text, &Options::default())
}

fn run_with(text: &str, opts: &Options) -> (ExitClass, Value) {
    let o = run_text(text, opts);
    (o.exit, o.report)
}

fn field(text: &str) -> String {
    let (exit, report) = run(text);
    assert_eq!(exit, ExitClass::InputError, "{report}");
    report["error"]["field"].as_str().unwrap_or_default().to_string()
}

#[test]
fn malformed_files_point_at_the_field() {
    assert_eq!(field("not json"), "scenario");
    assert_eq!(field(r#"{"command": "alike"} trailing"#), "scenario");
    assert_eq!(field(r#"{"command": "fly"}"#), "command");
    assert_eq!(field(r#"{"command": "alike", "extra": 1}"#), "extra");
    assert_eq!(field(r#"{"command": "alike", "probe": {"radii": [1, "x/y"]}}"#), "probe.radii[1]");
    assert_eq!(
        field(r#"{"command": "asdim-upper", "inputs": {"space": {"kind": "integers"}, "scales": "1,2"}}"#),
        "inputs.scales"
    );
    assert_eq!(
        field(r#"{"command": "bounded", "inputs": {"model": {"kind": "ray"}, "set": {"kind": "evens", "x": 1}}}"#),
        "inputs.set"
    );
    assert_eq!(
        field(
            r#"{"command": "disjoint", "inputs": {"space": {"kind": "integers"}, "a": {"kind": "evens"}, "b": {"kind": "odds"}, "slope": "1/0"}}"#
        ),
        "inputs.slope"
    );
    assert_eq!(
        field(
            r#"{"command": "coarse-check", "inputs": {"map": {"map": {"kind": "floor-div", "k": 0}, "domain": {"kind": "integers"}}}}"#
        ),
        "inputs.map.map.k"
    );
}

#[test]
fn malformed_scales_exit_three() {
    for scales in ["[2, 1]", "[0, 1]", "[]", "[1, 1]"] {
        let text = format!(
            r#"{{"command": "asdim-upper", "inputs": {{"space": {{"kind": "integers"}}, "scales": {scales}}}}}"#
        );
        let (exit, report) = run(&text);
        assert_eq!(exit, ExitClass::InputError, "{scales}");
        assert_eq!(report["error"]["kind"], "invalid-params");
    }
}

#[test]
fn flags_override_the_scenario_probe() {
    let text = r#"{"command": "bounded", "probe": {"radii": [10, 20], "scales": [1]},
        "inputs": {"model": {"kind": "metric", "space": {"kind": "integers"}}, "set": {"kind": "range", "lo": -3, "hi": 3}}}"#;
    let (exit, report) = run(text);
    assert_eq!(exit, ExitClass::Violation);
    assert_eq!(report["provenance"]["probe"]["radii"], serde_json::json!([10, 20]));
    let opts = Options { probe_scales: Some("1, 2, 4, 8".into()), stability: Some(2), ..Options::default() };
    let (exit, report) = run_with(text, &opts);
    assert_eq!(exit, ExitClass::Definite);
    assert_eq!(report["verdict"]["r"], 4);
    assert_eq!(report["provenance"]["probe"]["stability"], 2);
    let bad = Options { probe_radii: Some("10,zz".into()), ..Options::default() };
    let (exit, report) = run_with(text, &bad);
    assert_eq!(exit, ExitClass::InputError);
    assert_eq!(report["error"]["field"], "--probe-radii[1]");
}

#[test]
fn sampled_axioms_follow_the_seed() {
    let text = r#"{"command": "axioms-asr", "inputs": {"universe": [0, 1, 2, 3, 4, 5, 6, 7],
        "relation": {"kind": "equal-size"}, "mode": "sampled", "samples": 200}}"#;
    let at = |seed| {
        let mut o = run_text(text, &Options { seed, ..Options::default() });
        mask_timings(&mut o.report);
        o
    };
    let (a, b, c) = (at(7), at(7), at(8));
    assert_eq!(a.text(), b.text());
    assert_eq!(a.exit, ExitClass::Violation);
    assert!(a.report["verdict"]["failed"].as_array().unwrap().contains(&"union".into()));
    assert_eq!(c.report["provenance"]["seed"], 8);
}

#[test]
fn samples_need_sampled_mode() {
    let text = r#"{"command": "axioms-proximity", "inputs": {"universe": [0, 1], "relation": {"kind": "always"}, "samples": 3}}"#;
    assert_eq!(field(text), "inputs.samples");
}

#[test]
fn budget_flag_limits_the_cover_search() {
    let text = r#"{"command": "asdim-lower", "inputs": {"space": {"kind": "integers"}, "region": [[0, 40]], "mesh": 5, "r": 1, "n": 2}}"#;
    let (exit, report) = run(text);
    assert_eq!(exit, ExitClass::Definite);
    assert_eq!(report["verdict"]["kind"], "feasible");
    assert_eq!(report["verdict"]["validated"], true);
    assert!(report["verdict"].get("cover").is_none());
    let (_, report) = run_with(text, &Options { emit_cover: true, ..Options::default() });
    assert!(report["verdict"]["cover"].is_array());
    let (exit, report) = run_with(text, &Options { budget: 2, ..Options::default() });
    assert_eq!(exit, ExitClass::Inconclusive);
    assert_eq!(report["verdict"]["kind"], "budget");
}

#[test]
fn relation_errors_surface() {
    let text = r#"{"command": "axioms-asr", "inputs": {"universe": [0, 1], "relation": {"kind": "model", "model": {"kind": "group", "space": {"kind": "integers"}}}}}"#;
    let (exit, report) = run(text);
    assert_eq!(exit, ExitClass::InputError);
    assert_eq!(report["error"]["kind"], "unsupported-model");
}

#[test]
fn entourage_operations() {
    let (exit, report) = run(r#"{"command": "entourage", "inputs": {"op": "compose",
            "first": {"kind": "explicit", "pairs": [[0, 1], [1, 2]]},
            "second": {"kind": "explicit", "pairs": [[1, 5], [2, 6]]}}}"#);
    assert_eq!(exit, ExitClass::Definite);
    assert_eq!(report["verdict"]["entourage"]["pairs"].as_array().unwrap().len(), 2);
    let (_, report) = run(r#"{"command": "entourage", "inputs": {"op": "image",
            "entourage": {"kind": "displacement", "space": {"kind": "integers"}, "bound": 1}, "points": [0, 10]}}"#);
    assert_eq!(report["verdict"]["points"], serde_json::json!([-1, 0, 1, 9, 10, 11]));
    let (exit, report) = run(r#"{"command": "entourage", "inputs": {"op": "alike-via", "space": {"kind": "integers"},
            "family": [{"kind": "diagonal", "points": []}], "a": {"kind": "evens"}, "b": {"kind": "odds"}, "radius": 20}}"#);
    assert_eq!(exit, ExitClass::Violation);
    assert_eq!(report["verdict"]["kind"], "refuted");
}

#[test]
fn binary_writes_report_to_stdout_and_summary_to_stderr() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_coarse"))
        .args(["run", "-", "--seed", "3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"command": "alike", "inputs": {"model": {"kind": "finite-infinite"}, "a": {"kind": "explicit", "points": [1, 2]}, "b": {"kind": "evens"}}}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"]["kind"], "refuted");
    assert_eq!(report["provenance"]["seed"], 3);
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim(), "coarse alike: refuted (exit 1)");

    let out = Command::new(env!("CARGO_BIN_EXE_coarse")).args(["run", "/nonexistent.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["error"]["field"], "scenario");
}
