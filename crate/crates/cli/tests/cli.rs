use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn hyperb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperb"))
        .args(args)
        .env_remove("HYPERB_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn table_row_for_seven_five() {
    let out = hyperb(&["table", "--n", "7", "--p", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[1], "7,5,44,64,86,78,73");
}

#[test]
fn table_grid_has_one_row_per_pair() {
    let out = hyperb(&["table", "--n", "2..5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 1 + 2 + 3 + 4 + 5);
}

#[test]
fn empty_table_is_header_only() {
    let out = hyperb(&["table", "--n", "5", "--p", "9"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 1);
}

#[test]
fn table_json_starts_with_schema() {
    let out = hyperb(&["table", "--n", "6", "--p", "4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc.as_object().unwrap().keys().next().map(String::as_str), Some("schema"));
    assert_eq!(doc["rows"].as_array().unwrap().len(), 1);
}

#[test]
fn table_with_alphabet_adds_columns() {
    let out = hyperb(&["table", "--n", "4", "--p", "3", "--q", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().next().unwrap().ends_with(",q,hamming_lower"));
    assert!(text.lines().nth(1).unwrap().ends_with(",3,27"));
}

#[test]
fn unwritable_output_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("t.csv");
    let out = hyperb(&["table", "--n", "5", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let direct = hyperb(&["table", "--n", "3..6"]);
    let to_file = hyperb(&["table", "--n", "3..6", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&to_file), 0);
    assert!(to_file.stdout.is_empty());
    assert_eq!(fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn verify_close_exhaustive_passes() {
    let out = hyperb(&["verify", "--theorem", "close", "--n", "3", "--exhaustive"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["theorem"], "close");
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_sampled_is_reproducible() {
    let args = ["verify", "--theorem", "open", "--n", "6", "--p", "3", "--samples", "300", "--seed", "17"];
    let a = hyperb(&args);
    let b = hyperb(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let threaded = Command::new(env!("CARGO_BIN_EXE_hyperb"))
        .args(args)
        .env("HYPERB_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(threaded.stdout, a.stdout);
}

#[test]
fn verify_other_statements_pass() {
    for args in [
        &["verify", "--theorem", "coset", "--n", "4", "--q", "3", "--p", "3"][..],
        &["verify", "--theorem", "r3s", "--n-max", "64"],
        &["verify", "--theorem", "initial-segment", "--n", "2..5"],
        &["verify", "--theorem", "fixpoints", "--n", "2..4"],
        &["verify", "--theorem", "closed-form", "--n", "5..7"],
        &["verify", "--theorem", "compression", "--n", "3", "--exhaustive"],
    ] {
        let out = hyperb(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["passed"], true, "{args:?}");
    }
}

#[test]
fn infeasible_requests_exit_three() {
    let out = hyperb(&["verify", "--theorem", "close", "--n", "5", "--p", "2", "--exhaustive"]);
    assert_eq!(code(&out), 3);
    let out = hyperb(&["solve", "--hamming", "40,40", "--p", "1"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn verify_without_mode_is_usage_error() {
    let out = hyperb(&["verify", "--theorem", "close", "--n", "3"]);
    assert_eq!(code(&out), 64);
    let out = hyperb(&["verify", "--theorem", "close", "--n", "3", "--samples", "5"]);
    assert_eq!(code(&out), 64);
}

#[test]
fn solve_small_graphs() {
    for (args, b) in [
        (&["solve", "--hypercube", "2", "--p", "1"][..], 2),
        (&["solve", "--hypercube", "3", "--p", "1"], 4),
        (&["solve", "--hamming", "2,3", "--p", "1"], 3),
    ] {
        let out = hyperb(args);
        assert_eq!(code(&out), 0, "{args:?}");
        let doc = json(&out);
        assert_eq!(doc["status"], "exact");
        assert_eq!(doc["b"], b, "{args:?}");
        assert_eq!(doc["witness"]["k"], b);
    }
}

#[test]
fn exhausted_budget_exits_four() {
    let out = hyperb(&["solve", "--hypercube", "4", "--p", "2", "--max-nodes", "1"]);
    assert_eq!(code(&out), 4);
    let doc = json(&out);
    assert_eq!(doc["status"], "unknown");
    assert!(doc["b"].is_null());
    assert!(doc["lower"].as_u64().unwrap() <= doc["upper"].as_u64().unwrap());
}

#[test]
fn negative_time_budget_is_usage_error() {
    let out = hyperb(&["solve", "--hypercube", "2", "--p", "1", "--max-seconds", "-1"]);
    assert_eq!(code(&out), 64);
}

#[test]
fn emitted_coloring_checks_out() {
    let dir = tempfile::tempdir().unwrap();
    for (args, name) in [
        (&["color", "--n", "3", "--q", "3"][..], "h.json"),
        (&["color", "--n", "4", "--hypercube"], "q.json"),
    ] {
        let path = dir.path().join(name);
        let mut full = args.to_vec();
        full.extend(["-o", path.to_str().unwrap()]);
        assert_eq!(code(&hyperb(&full)), 0);
        let out = hyperb(&["color", "--check", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{name}");
        assert_eq!(json(&out)["certificate"]["valid_b"], true);
    }
}

#[test]
fn improper_witness_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"schema":1,"kind":"hamming","n":2,"q":3,"p":1,"k":3,"assignment":[0,0,1,1,2,2,0,1,2]}"#)
        .unwrap();
    let out = hyperb(&["color", "--check", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["certificate"]["valid_b"], false);
}

#[test]
fn malformed_witness_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.json");
    for body in ["not json", r#"{"schema":9,"kind":"hamming","n":1,"q":2,"p":0,"k":1,"assignment":[0,0]}"#] {
        fs::write(&path, body).unwrap();
        let out = hyperb(&["color", "--check", path.to_str().unwrap()]);
        assert_eq!(code(&out), 64, "{body}");
    }
    let out = hyperb(&["color", "--check", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn rank_and_unrank() {
    assert_eq!(stdout(&hyperb(&["rank", "--n", "4", "--subset", "{1,3}"])), "6\n");
    assert_eq!(stdout(&hyperb(&["rank", "--n", "4", "--rank", "6"])), "{1,3}\n");
    let list = stdout(&hyperb(&["rank", "--n", "3", "--list"]));
    assert_eq!(list.lines().count(), 8);
    assert_eq!(list.lines().nth(4), Some("4\t{1,2}"));
    assert_eq!(code(&hyperb(&["rank", "--n", "3", "--rank", "8"])), 64);
}

#[test]
fn usage_errors_exit_sixty_four() {
    assert_eq!(code(&hyperb(&["frobnicate"])), 64);
    assert_eq!(code(&hyperb(&["table"])), 64);
    assert_eq!(code(&hyperb(&["table", "--n", "5..x"])), 64);
    assert_eq!(code(&hyperb(&["solve", "--p", "1"])), 64);
    assert_eq!(code(&hyperb(&["--help"])), 0);
}

#[test]
fn bad_thread_count_is_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperb"))
        .args(["rank", "--n", "2", "--rank", "1"])
        .env("HYPERB_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&out), 64);
}
