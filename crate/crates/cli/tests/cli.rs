use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

use qrank_cli::codec::{parse_presentation, presentation_json};
use qrank_cli::{run_document, Status};
use qrank_core::config::Budget;

fn qrank(args: &[&str], stdin: &str, envs: &[(&str, &str)]) -> (String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qrank"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.env_remove("QRANK_MAX_DEGREE").env_remove("QRANK_MAX_PRIME");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn run_json(args: &[&str], stdin: &Value) -> (Value, i32) {
    let (out, code) = qrank(args, &stdin.to_string(), &[]);
    (serde_json::from_str(&out).expect("output is JSON"), code)
}

#[test]
fn rank_of_x_minus_nine() {
    let task = json!({"command": "rank", "payload": {"ring": "Q", "char_poly": {"coeffs": ["-9", "1"]}}});
    let (r, code) = run_json(&["run"], &task);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["result"]["rank"], 2);
    assert_eq!(r["result"]["n"], 2);
    assert_eq!(r["result"]["factors"], json!([{"coeffs": ["-3", "1"]}, {"coeffs": ["3", "1"]}]));
    assert_eq!(r["result"]["certificates_replayed"], true);
    assert_eq!(r["engine_version"], qrank_cli::ENGINE_VERSION);
    assert_eq!(r["input"], task["payload"]);
}

#[test]
fn root_of_unity_is_a_validation_failure() {
    let task = json!({"command": "rank", "payload": {"ring": "Q", "char_poly": {"coeffs": ["-1", "1"]}}});
    let (r, code) = run_json(&["run"], &task);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "validation_failed");
}

#[test]
fn fixed_field_rank_is_m() {
    let (r, code) = run_json(&["fixed-field"], &json!({"q0": "1", "m": 3, "characteristic": 5}));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["rank"], 3);
    let (r, _) = run_json(&["fixed-field"], &json!({"q0": "1/2", "m": 0, "characteristic": 7}));
    assert_eq!(r["result"]["rank"], "undefined");
    let (r, code) = run_json(&["fixed-field"], &json!({"q0": "1", "m": 2, "characteristic": 0}));
    assert_eq!((r["status"].as_str(), code), (Some("validation_failed"), 2));
}

#[test]
fn budget_overrun_exits_three() {
    let payload = json!({"ring": "Q", "char_poly": {"coeffs": ["4", "1"]}});
    let (out, code) = qrank(&["rank"], &payload.to_string(), &[("QRANK_MAX_DEGREE", "2")]);
    assert_eq!(code, 3);
    assert!(out.contains("\"budget_exceeded\""));
    let (_, code) = qrank(&["rank"], &payload.to_string(), &[("QRANK_MAX_DEGREE", "lots")]);
    assert_eq!(code, 4);
}

#[test]
fn malformed_inputs_exit_four_without_panicking() {
    let cases = [
        "",
        "{",
        "[1, 2",
        "null",
        "42",
        r#"{"ring": "Q"}"#,
        r#"{"ring": "R", "char_poly": {"coeffs": ["1", "1"]}}"#,
        r#"{"ring": "Q", "char_poly": {"coeffs": ["x", "1"]}}"#,
        r#"{"ring": "Q", "char_poly": {"coeffs": [1.5, "1"]}}"#,
        r#"{"ring": "Q", "char_poly": {"coeffs": ["1/0", "1"]}}"#,
        r#"{"ring": "Q", "char_poly": "x-9"}"#,
        r#"{"ring": "Q", "last_row": ["9"], "size": 3}"#,
        r#"{"ring": "Q", "char_poly": {"coeffs": ["-9", "1"]}, "extra": 1}"#,
        r#"{"ring": {"min_poly": {"coeffs": ["1", "0", "1"]}}, "char_poly": {"coeffs": [["1", "2", "3"], ["1"]]}}"#,
        r#"{"command": "validate", "payload": {}}"#,
    ];
    for c in cases {
        let (out, code) = qrank(&["rank"], c, &[]);
        assert_eq!(code, 4, "input {c:?} gave {out}");
        let r: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(r["status"], "parse_error");
    }
}

#[test]
fn precondition_failures_exit_two() {
    let cases = [
        json!({"ring": "Q", "char_poly": {"coeffs": ["0", "1"]}}),
        json!({"ring": "Q", "char_poly": {"coeffs": ["1", "2"]}}),
        json!({"ring": "Q", "char_poly": {"coeffs": ["-1", "0", "1"]}}),
        json!({"ring": "Q", "char_poly": {"coeffs": ["5"]}}),
        json!({"ring": {"min_poly": {"coeffs": ["-1", "0", "1"]}}, "char_poly": {"coeffs": ["-9", "1"]}}),
    ];
    for c in cases {
        let (r, code) = run_json(&["rank"], &c);
        assert_eq!(code, 2, "{c} gave {r}");
    }
}

#[test]
fn reduct_rank_and_spectrum() {
    let (r, _) = run_json(&["reduct-rank"], &json!({"ring": "Q", "char_poly": {"coeffs": ["-9", "1"]}, "n": 3}));
    assert_eq!(r["result"]["rank"], 1);
    let (r, _) = run_json(&["reduct-rank"], &json!({"ring": "Q", "char_poly": {"coeffs": ["4", "1"]}, "n": 4}));
    assert_eq!(r["result"]["degree_spectrum"], json!([2, 2]));
}

#[test]
fn hereditary_over_gaussian_rationals() {
    let payload = json!({
        "field": {"min_poly": {"coeffs": ["1", "0", "1"]}},
        "poly": {"coeffs": [["4", "0"], ["1", "0"]]}
    });
    let (r, code) = run_json(&["hereditary"], &payload);
    assert_eq!(code, 0, "{r}");
    // -4 = (1+i)^4 over Q(i), and the factorization continues from there
    assert!(r["result"]["n"].as_u64().unwrap() >= 4);
    assert_eq!(r["result"]["certificates_replayed"], true);
}

#[test]
fn oracle_and_degree_bound() {
    let (r, _) = run_json(&["oracle"], &json!({"field": "Q", "poly": {"coeffs": ["-64", "1"]}, "ns": [1, 2, 6]}));
    let counts: Vec<u64> = r["result"]["counts"].as_array().unwrap().iter().map(|c| c["factors"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![1, 2, 4]);
    let (r, _) = run_json(&["degree-bound"], &json!({"deg_pi": 1, "deg_rho": 9}));
    assert_eq!(r["result"]["rank_bound"], json!({"at_most": 2}));
    let (r, _) = run_json(&["degree-bound"], &json!({"ratio": "1"}));
    assert_eq!(r["result"]["rank_bound"], Value::Null);
}

#[test]
fn prolonged_presentations_round_trip() {
    let payload = json!({"ring": "Q", "char_poly": {"coeffs": ["1", "-4", "1"]}, "n": 2});
    let (r, _) = run_json(&["prolong"], &payload);
    let p = &r["result"]["presentation"];
    assert_eq!(p["last_row"], json!([{"coords": ["-1"]}, {"coords": ["0"]}, {"coords": ["4"]}, {"coords": ["0"]}]));
    let g = parse_presentation(p, &[]).unwrap();
    assert_eq!(presentation_json(&g), *p);
}

#[test]
fn batch_keeps_order_and_reports_worst_status() {
    let tasks = json!([
        {"command": "fixed-field", "payload": {"q0": "1", "m": -4, "characteristic": 2}},
        {"command": "nonsense", "payload": {}},
        {"command": "rank", "payload": {"ring": "Q", "char_poly": {"coeffs": ["-12", "1"]}}},
    ]);
    let (r, status) = run_document(&tasks, &Budget::default());
    assert_eq!(status, Status::ParseError);
    let r = r.as_array().unwrap();
    assert_eq!(r[0]["result"]["rank"], 4);
    assert_eq!(r[1]["status"], "parse_error");
    assert_eq!(r[2]["result"]["rank"], 1);
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let tasks = json!([
        {"command": "rank", "payload": {"ring": "Q", "char_poly": {"coeffs": ["-64", "1"]}}},
        {"command": "rank", "payload": {"ring": "Q", "char_poly": {"coeffs": ["4", "1"]}}},
        {"command": "hereditary", "payload": {"field": {"min_poly": {"coeffs": ["-2", "0", "1"]}}, "poly": {"coeffs": [["-3", "0"], ["1", "0"]]}}},
    ])
    .to_string();
    let (one, c1) = qrank(&["run"], &tasks, &[("RAYON_NUM_THREADS", "1")]);
    let (many, c2) = qrank(&["run"], &tasks, &[("RAYON_NUM_THREADS", "8")]);
    let (again, _) = qrank(&["run"], &tasks, &[]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(one, many);
    assert_eq!(one, again);
}

#[test]
fn files_and_text_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("task.json");
    let output = dir.path().join("report.txt");
    std::fs::write(&input, r#"{"ring": "Q", "char_poly": {"coeffs": ["1", "-4", "1"]}}"#).unwrap();
    let (stdout, code) = qrank(
        &["validate", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap(), "--format", "text"],
        "",
        &[],
    );
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&output).unwrap();
    assert!(text.starts_with("status: ok\ncommand: validate\n"));
    assert!(text.contains("passes: true"));
    assert!(text.contains("char_poly: x^2 - 4*x + 1"));
}

#[test]
fn task_object_accepted_by_matching_subcommand_only() {
    let task = json!({"command": "fixed-field", "payload": {"q0": "2", "m": 5, "characteristic": 3}});
    let (r, code) = run_json(&["fixed-field"], &task);
    assert_eq!((code, r["result"]["rank"].as_u64()), (0, Some(5)));
    let (_, code) = run_json(&["rank"], &task);
    assert_eq!(code, 4);
}
