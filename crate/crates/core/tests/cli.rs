//! End-to-end runs of the `lexford` binary.

use std::process::{Command, Output};

const GOLDEN_CSV: &str = include_str!("golden/tables_10.csv");
const GOLDEN_TXT: &str = include_str!("golden/tables_10.txt");

fn lexford(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexford"))
        .args(args)
        .env_remove("LEXFORD_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = lexford(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn tables_match_golden_files() {
    assert_eq!(
        stdout(&["tables", "--max-order", "10", "--format", "csv"]),
        GOLDEN_CSV
    );
    assert_eq!(stdout(&["tables", "--max-order", "10"]), GOLDEN_TXT);
    assert_eq!(
        stdout(&["tables", "--max-order", "10", "--sequential"]),
        GOLDEN_TXT
    );
}

#[test]
fn tables_single_order() {
    assert_eq!(
        stdout(&["tables", "--max-order", "1", "--format", "csv"]),
        "skew,0\n1,-1\n\nlength,0\n1,1\n"
    );
}

#[test]
fn tables_json_has_nulls_for_absent_cells() {
    let doc: serde_json::Value =
        serde_json::from_str(&stdout(&["tables", "--max-order", "3", "--format", "json"])).unwrap();
    assert_eq!(doc["max_order"], 3);
    assert_eq!(doc["skew"][0], serde_json::json!([-1, null, null]));
    assert_eq!(doc["length"][2], serde_json::json!([1, 4, 7]));
}

#[test]
fn profile_csv_shape() {
    let csv = stdout(&["profile", "--order", "3"]);
    let lines: Vec<&str> = csv.split('\n').collect();
    assert_eq!(lines.len(), 10, "header, 8 rows, trailing empty");
    assert!(lines.iter().all(|l| !l.contains('\r')));
    for row in &lines[1..9] {
        assert_eq!(row.split(',').count(), 5);
    }
}

/// Breakpoint rows of the profile carry the negated skew of the following
/// suffix, which must agree with the skew table.
#[test]
fn profile_breakpoints_agree_with_tables() {
    let table = stdout(&["tables", "--max-order", "8", "--format", "json"]);
    let table: serde_json::Value = serde_json::from_str(&table).unwrap();
    for n in 2..=8u32 {
        let doc: serde_json::Value = serde_json::from_str(&stdout(&[
            "profile",
            "--order",
            &n.to_string(),
            "--format",
            "json",
        ]))
        .unwrap();
        assert_eq!(doc["order"], n);
        let rows = doc["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 1 << n);
        let labelled: Vec<_> = rows.iter().filter(|r| !r["breakpoint"].is_null()).collect();
        assert_eq!(labelled.len(), n as usize + 1);
        for row in labelled {
            let i = row["breakpoint"].as_u64().unwrap();
            let suffix = row["suffix_skew"].as_i64().unwrap();
            assert_eq!(suffix, -row["skew"].as_i64().unwrap());
            if (1..=u64::from(n)).contains(&i) {
                // What follows the i marker is K_(i-1).
                assert_eq!(
                    table["skew"][n as usize - 1][i as usize - 1]
                        .as_i64()
                        .unwrap(),
                    suffix,
                    "n={n}, i={i}"
                );
            }
        }
    }
}

#[test]
fn profile_order_six_breakpoint_rows() {
    let csv = stdout(&["profile", "--order", "6"]);
    let marked: Vec<&str> = csv.lines().skip(1).filter(|l| !l.ends_with(',')).collect();
    assert_eq!(
        marked,
        [
            "1,0,1,-1,6",
            "7,1,5,-5,5",
            "13,1,7,-7,4",
            "25,1,9,-9,3",
            "46,1,8,-8,2",
            "63,1,1,-1,1",
            "64,1,0,0,0"
        ]
    );
}

#[test]
fn seq_and_compositions() {
    assert_eq!(
        stdout(&["seq", "G", "--m", "2", "--count", "6", "--format", "csv"]),
        "1,1,2,3,5,8\n"
    );
    assert_eq!(
        stdout(&["seq", "H", "--m", "2", "--count", "5"]),
        "2\n1\n3\n4\n7\n"
    );
    assert_eq!(
        stdout(&["seq", "P", "--m", "3", "--count", "7", "--format", "csv"]),
        "0,1,0,1,2,3,6\n"
    );
    assert_eq!(
        stdout(&["seq", "L", "--count", "4", "--format", "json"]),
        "[2,1,3,4]\n"
    );
    assert_eq!(stdout(&["compositions", "--n", "5", "--m", "2"]), "6\n");
    assert_eq!(stdout(&["compositions", "--n", "1", "--m", "3"]), "0\n");
    assert_eq!(
        stdout(&["compositions", "--n", "5", "--m", "2", "--list"]),
        "2+3\n2+3'\n3+2\n3'+2\n5\n5'\n"
    );
    assert_eq!(
        stdout(&["compositions", "--n", "8", "--m", "3", "--list"])
            .lines()
            .count(),
        52
    );
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| lexford(args).status.code();
    assert_eq!(code(&["generate", "--order", "4"]), Some(0));
    assert_eq!(code(&["generate", "--order", "29"]), Some(2));
    assert_eq!(
        code(&["generate", "--order", "15", "--method", "greedy"]),
        Some(2)
    );
    assert_eq!(code(&["generate", "--order", "x"]), Some(2));
    assert_eq!(code(&["seq", "P", "--m", "1"]), Some(2));
    assert_eq!(code(&["seq", "F", "--count", "200"]), Some(2));
    assert_eq!(code(&["compositions", "--n", "30", "--list"]), Some(2));
    assert_eq!(
        code(&["verify", "--max-order", "6", "--max-m", "3"]),
        Some(0)
    );
    assert_eq!(code(&[]), Some(2));
    let out = lexford(&["generate", "--order", "29"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the cap"));
}

#[test]
fn order_cap_from_environment() {
    let run = |cap: &str, order: &str| {
        Command::new(env!("CARGO_BIN_EXE_lexford"))
            .args(["generate", "--order", order])
            .env("LEXFORD_MAX_ORDER", cap)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(run("5", "5"), Some(0));
    assert_eq!(run("5", "6"), Some(2));
}

#[test]
fn outputs_are_deterministic_and_ascii() {
    for args in [
        &[
            "verify",
            "--max-order",
            "8",
            "--max-m",
            "4",
            "--format",
            "json",
        ][..],
        &["tables", "--max-order", "9"],
        &["profile", "--order", "7", "--format", "json"],
    ] {
        let a = stdout(args);
        assert_eq!(a, stdout(args));
        assert!(a.is_ascii());
    }
    let seq = stdout(&["verify", "--max-order", "8", "--max-m", "4", "--sequential"]);
    assert_eq!(seq, stdout(&["verify", "--max-order", "8", "--max-m", "4"]));
}

#[test]
fn verify_json_report() {
    let doc: serde_json::Value = serde_json::from_str(&stdout(&[
        "verify",
        "--max-order",
        "10",
        "--max-m",
        "5",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(doc["passed"], true);
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.len() >= 30);
    assert!(checks
        .iter()
        .all(|c| c["passed"] == true && c["counterexample"].is_null()));
    assert!(checks.iter().any(|c| c["name"] == "tables.published"));
}
