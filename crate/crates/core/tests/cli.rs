//! End-to-end tests of the `qclift` binary: documented output lines, exit
//! codes, determinism, and cross-command consistency.

use std::path::PathBuf;
use std::process::{Command, Output};

fn qclift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qclift"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn data_file() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data/wimax_rate12_L96.em")
        .to_string_lossy()
        .into_owned()
}

fn write_temp(name: &str, content: &str) -> String {
    let path = std::env::temp_dir().join(format!("qclift-test-{}-{name}", std::process::id()));
    std::fs::write(&path, content).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn lift_fsm_emits_exponent_matrix_on_stdout() {
    let out = qclift(&[
        "lift",
        &data_file(),
        "--method",
        "fsm",
        "--target",
        "24",
        "--scale",
        "95",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("12 24 24\n"), "{text}");
    // entry (0,1) = 94 maps to floor(24 * ((95*94) mod 96) / 96) = floor(24*2/96) = 0
    let second_line = text.lines().nth(1).unwrap();
    assert_eq!(second_line.split_whitespace().nth(1).unwrap(), "0");
}

#[test]
fn verify_prop2_matches_documented_line() {
    let out = qclift(&["verify", "--claim", "prop2", "--q", "4"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "claim=prop2 status=PASS expected=3/4,5/28 got=3/4,5/28\n"
    );
}

#[test]
fn girth_on_missing_file_exits_1() {
    let out = qclift(&["girth", "definitely-missing.em"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("definitely-missing.em"));
}

#[test]
fn unknown_flag_exits_2() {
    let out = qclift(&["girth", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn girth_reports_published_values_for_lifted_matrix() {
    let lift = qclift(&[
        "lift",
        &data_file(),
        "--method",
        "fsm",
        "--target",
        "24",
        "--scale",
        "95",
    ]);
    assert!(lift.status.success());
    let lifted_path = write_temp("lifted24.em", &stdout(&lift));

    let girth = qclift(&["--format", "kv", "girth", &lifted_path, "--check-oracle"]);
    assert!(girth.status.success(), "{}", stderr(&girth));
    assert_eq!(stdout(&girth), "girth=6\ncycles=13\noracle_girth=6\n");
}

#[test]
fn search_row_matches_lift_then_cycles() {
    let base = write_temp("base34.em", "3 4 10\n0 1 2 3\n4 5 6 7\n8 9 0 1\n");

    let search = qclift(&[
        "--format",
        "kv",
        "search",
        &base,
        "--targets",
        "5",
        "--max-cycle-len",
        "8",
        "--candidates",
        "units",
    ]);
    assert!(search.status.success(), "{}", stderr(&search));
    let text = stdout(&search);
    let row = text
        .lines()
        .find(|l| l.starts_with("target=5 "))
        .expect("row for target 5");
    let field = |key: &str| -> String {
        row.split_whitespace()
            .find_map(|kv| kv.strip_prefix(&format!("{key}=")))
            .unwrap_or_else(|| panic!("field {key} in {row}"))
            .to_string()
    };

    let lift = qclift(&[
        "lift",
        &base,
        "--method",
        "fsm",
        "--target",
        "5",
        "--scale",
        &field("r"),
    ]);
    assert!(lift.status.success());
    let lifted_path = write_temp("lifted5.em", &stdout(&lift));
    let girth = qclift(&["--format", "kv", "girth", &lifted_path, "--max-cycle-len", "8"]);
    assert!(girth.status.success());
    assert_eq!(
        stdout(&girth),
        format!("girth={}\ncycles={}\n", field("girth"), field("cycles"))
    );
}

#[test]
fn search_output_is_byte_identical_across_runs() {
    let args = [
        "--format",
        "kv",
        "search",
        &data_file(),
        "--targets",
        "24,28",
        "--candidates",
        "all",
    ];
    let first = qclift(&args);
    let second = qclift(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let text = stdout(&first);
    assert!(
        text.contains("target=24 r=95 girth=6 cycles=13 floor_girth=6 floor_cycles=20"),
        "{text}"
    );
    assert!(
        text.contains("target=28 r=1 girth=4 cycles=1 floor_girth=4 floor_cycles=1"),
        "{text}"
    );
}

#[test]
fn expand_emits_alist_with_correct_counts() {
    let base = write_temp("expand.em", "2 2 3\n0 1\n2 -1\n");
    let out = qclift(&["expand", &base]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("6 6")); // N M
    assert_eq!(lines.next(), Some("2 2")); // max degrees
    // 3 nonzero blocks of size 3 -> 9 ones; count 1-based indices below.
    let ones: usize = text
        .lines()
        .skip(4)
        .flat_map(|l| l.split_whitespace())
        .filter(|tok| *tok != "0")
        .count();
    assert_eq!(ones, 2 * 9); // listed once per column and once per row
}

#[test]
fn monte_carlo_claims_are_seed_reproducible() {
    let args = [
        "verify", "--claim", "thm2", "--y", "100", "--trials", "2000", "--seed", "7",
    ];
    let first = qclift(&args);
    let second = qclift(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_all_passes() {
    let out = qclift(&[
        "verify", "--claim", "all", "--trials", "20000", "--seed", "1",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(!text.contains("status=FAIL"), "{text}");
    for claim in ["prop2", "prop3", "prop4", "thm1", "prop5", "thm2", "thm3", "lemma1"] {
        assert!(
            text.contains(&format!("claim={claim}")),
            "missing {claim} in:\n{text}"
        );
    }
}

#[test]
fn threads_flag_does_not_change_output() {
    let base = write_temp("threads.em", "3 4 10\n0 1 2 3\n4 5 6 7\n8 9 0 1\n");
    let single = qclift(&[
        "--threads", "1", "--format", "kv", "search", &base, "--targets", "5,10",
    ]);
    let many = qclift(&[
        "--threads", "4", "--format", "kv", "search", &base, "--targets", "5,10",
    ]);
    assert!(single.status.success());
    assert_eq!(single.stdout, many.stdout);
}
