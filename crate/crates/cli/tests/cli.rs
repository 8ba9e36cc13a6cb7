//! End-to-end tests of the `candy` binary: document shapes, golden lines,
//! exit codes, and determinism guarantees.

use std::process::{Command, Output};

fn candy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_candy"))
        .args(args)
        .env_remove("CANDY_MAX_ROUNDS")
        .output()
        .expect("binary runs")
}

fn stdout_lines(output: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .map(|line| serde_json::from_str(line).expect("valid json line"))
        .collect()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn simulate_reports_the_trajectory() {
    let out = candy(&["simulate", "--counts", "3,1,3,3"]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["schema"], 1);
    let doc = &lines[1];
    assert_eq!(doc["n"], 4);
    assert_eq!(doc["c"], 10);
    assert_eq!(doc["transient"], 1);
    assert_eq!(doc["period"], 1);
    assert_eq!(doc["outcome"], "ActiveFixed");
    assert_eq!(doc["attractor"], serde_json::json!([2, 3, 2, 3]));
}

#[test]
fn simulate_reports_fixed_points_immediately() {
    let out = candy(&["simulate", "--counts", "3,3,3"]);
    let doc = &stdout_lines(&out)[1];
    assert_eq!(doc["transient"], 0);
    assert_eq!(doc["period"], 1);
}

#[test]
fn simulate_trace_covers_attractor_entry_plus_one_period() {
    let out = candy(&["simulate", "--counts", "4,0,0", "--trace"]);
    let doc = &stdout_lines(&out)[1];
    assert_eq!(doc["transient"], 1);
    assert_eq!(doc["period"], 2);
    assert_eq!(
        doc["trace"],
        serde_json::json!([[4, 0, 0], [2, 1, 1], [0, 2, 2], [2, 1, 1]])
    );
}

#[test]
fn simulate_rejects_too_few_students() {
    let out = candy(&["simulate", "--counts", "0,0"]);
    assert_eq!(exit_code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("students"));
}

#[test]
fn round_cap_env_var_applies_and_flag_wins() {
    let short_cap = Command::new(env!("CARGO_BIN_EXE_candy"))
        .args(["simulate", "--counts", "4,0,0"])
        .env("CANDY_MAX_ROUNDS", "2")
        .output()
        .unwrap();
    assert_eq!(exit_code(&short_cap), 3);

    let flag_wins = Command::new(env!("CARGO_BIN_EXE_candy"))
        .args(["simulate", "--counts", "4,0,0", "--max-rounds", "100"])
        .env("CANDY_MAX_ROUNDS", "2")
        .output()
        .unwrap();
    assert_eq!(exit_code(&flag_wins), 0);

    let bad_env = Command::new(env!("CARGO_BIN_EXE_candy"))
        .args(["simulate", "--counts", "4,0,0"])
        .env("CANDY_MAX_ROUNDS", "soon")
        .output()
        .unwrap();
    assert_eq!(exit_code(&bad_env), 2);
}

#[test]
fn verify_theorem_passes_in_scope() {
    let out = candy(&["verify", "theorem", "--n", "3", "--c", "7"]);
    assert_eq!(exit_code(&out), 0);
    let doc = &stdout_lines(&out)[1];
    assert_eq!(doc["claim"], "theorem_3n_minus_2");
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["counterexample"], serde_json::Value::Null);
}

#[test]
fn verify_rejects_out_of_scope_hypotheses() {
    let theorem = candy(&["verify", "theorem", "--n", "3", "--c", "6"]);
    assert_eq!(exit_code(&theorem), 2);
    assert!(theorem.stdout.is_empty(), "failed validation must not emit records");

    let subcritical = candy(&["verify", "subcritical", "--n", "3", "--c", "3"]);
    assert_eq!(exit_code(&subcritical), 2);

    let endgame = candy(&["verify", "endgame", "--n", "3", "--c", "9"]);
    assert_eq!(exit_code(&endgame), 2);
}

#[test]
fn verify_subcritical_defaults_to_the_whole_band() {
    let out = candy(&["verify", "subcritical", "--n", "3..5"]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_lines(&out);
    // c ranges over 1..n-1: two records for n=3, three for n=4, four for n=5.
    assert_eq!(lines.len(), 1 + 2 + 3 + 4);
    assert!(lines[1..].iter().all(|v| v["passed"] == true));
}

#[test]
fn verify_endgame_emits_one_verdict_per_n() {
    let out = candy(&["verify", "endgame", "--n", "3..4"]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1]["claim"], "endgame_shape");
    assert_eq!(lines[1]["c"], serde_json::Value::Null);
}

#[test]
fn sweep_golden_line_for_a_known_family() {
    let out = candy(&["sweep", "--n", "3", "--c", "9"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("{\"schema\":1}"));
    assert_eq!(
        lines.next(),
        Some(
            "{\"n\":3,\"c\":9,\"canonical_mode\":false,\"total_enumerated\":55,\
             \"counts_by_outcome\":{\"Frozen\":0,\"ActiveFixed\":55,\"Periodic\":0},\
             \"max_transient\":3,\"max_transient_witness\":[0,1,8],\
             \"period_histogram\":{\"1\":55},\"witnesses\":[]}"
        )
    );
    assert_eq!(lines.next(), None);
}

#[test]
fn sweep_expands_symbolic_ranges() {
    let out = candy(&["sweep", "--n", "3..4", "--c", "3n-2..3n"]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_lines(&out);
    let pairs: Vec<(u64, u64)> = lines[1..]
        .iter()
        .map(|v| (v["n"].as_u64().unwrap(), v["c"].as_u64().unwrap()))
        .collect();
    assert_eq!(pairs, vec![(3, 7), (3, 8), (3, 9), (4, 10), (4, 11), (4, 12)]);
}

#[test]
fn sweep_period_histogram_shows_cycles() {
    let out = candy(&["sweep", "--n", "3", "--c", "4"]);
    let doc = &stdout_lines(&out)[1];
    assert_eq!(doc["period_histogram"]["2"], 15);
    assert_eq!(doc["counts_by_outcome"]["Periodic"], 15);
}

#[test]
fn scan_maps_the_open_band() {
    let out = candy(&["scan", "--n", "3", "--c", "1..9"]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 10);
    for doc in &lines[1..] {
        let c = doc["c"].as_u64().unwrap();
        let stabilizes = doc["all_stabilize"].as_bool().unwrap();
        assert_eq!(stabilizes, !(3..=6).contains(&c), "c={c}");
        assert_eq!(doc["witness"].is_null(), stabilizes, "c={c}");
    }
}

#[test]
fn scan_witnesses_reproduce_their_period_through_simulate() {
    let out = candy(&["scan", "--n", "3", "--c", "6"]);
    let doc = &stdout_lines(&out)[1];
    let witness: Vec<u64> = doc["witness"]
        .as_array()
        .expect("witness present at c=6")
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    let counts_arg = witness
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");

    let replay = candy(&["simulate", "--counts", &counts_arg]);
    let replay_doc = &stdout_lines(&replay)[1];
    assert!(
        replay_doc["period"].as_u64().unwrap() >= 2,
        "witness {witness:?} must re-simulate as periodic"
    );
}

#[test]
fn identical_invocations_are_byte_identical() {
    let first = candy(&["sweep", "--n", "3", "--c", "6"]);
    let second = candy(&["sweep", "--n", "3", "--c", "6"]);
    assert_eq!(first.stdout, second.stdout);

    let serial = candy(&["sweep", "--n", "5", "--c", "13", "--parallelism", "1"]);
    let parallel = candy(&["sweep", "--n", "5", "--c", "13", "--parallelism", "8"]);
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn output_flag_writes_the_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let out = candy(&["sweep", "--n", "3", "--c", "9", "--output", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert!(out.stdout.is_empty());

    let on_stdout = candy(&["sweep", "--n", "3", "--c", "9"]);
    assert_eq!(std::fs::read(&path).unwrap(), on_stdout.stdout);
}

#[test]
fn csv_export_uses_documented_columns() {
    let out = candy(&["sweep", "--n", "3", "--c", "9", "--format", "csv"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some(
            "n,c,canonical_mode,total_enumerated,counts_by_outcome,max_transient,\
             max_transient_witness,period_histogram,witnesses"
        )
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("3,9,false,55,"), "row was {row}");
}

#[test]
fn infeasible_sweeps_need_force() {
    let out = candy(&["sweep", "--n", "3", "--c", "200000"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));
}

#[test]
fn malformed_and_negative_total_expressions_fail_validation() {
    let malformed = candy(&["sweep", "--n", "3", "--c", "3m"]);
    assert_eq!(exit_code(&malformed), 2);

    let negative = candy(&["scan", "--n", "3", "--c", "n-5..9"]);
    assert_eq!(exit_code(&negative), 2);
    assert!(String::from_utf8_lossy(&negative.stderr).contains("negative"));
}
