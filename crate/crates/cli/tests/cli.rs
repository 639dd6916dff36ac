use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn circ(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circ"))
        .args(args)
        .env_remove("CIRC_ORACLE_CEILING")
        .output()
        .expect("run circ")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn rows(out: &Output) -> Vec<Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON row"))
        .collect()
}

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/output_record.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("valid schema")
}

fn assert_schema(rows: &[Value]) {
    let v = validator();
    for row in rows {
        let errors: Vec<String> = v.iter_errors(row).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{row}: {errors:?}");
    }
}

#[test]
fn tau_both_paths_agree() {
    let out = circ(&["tau", "C5(1,2)", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&out);
    assert_eq!(r[0]["tau"], "125");
    assert_eq!(r[0]["status"], "pass");
    assert_schema(&r);
}

#[test]
fn mobius_ladder_literal() {
    let out = circ(&["tau", "C3(1;d)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(rows(&out)[0]["tau"], "81");
}

#[test]
fn disconnected_exits_three_with_zero() {
    let out = circ(&["tau", "C6(2)"]);
    assert_eq!(out.status.code(), Some(3));
    let r = rows(&out);
    assert_eq!(r[0]["tau"], "0");
    assert!(r[0]["coefficient"].is_null());
    assert_schema(&r);
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(circ(&["tau", "C6(1"]).status.code(), Some(2));
    assert_eq!(circ(&["tau", "D6(1)"]).status.code(), Some(2));
    assert_eq!(circ(&["verify", "C*(1,x)"]).status.code(), Some(2));
    assert_eq!(
        circ(&["asymptote", "1,2", "--n", "9..3"]).status.code(),
        Some(2)
    );
    assert_eq!(circ(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn io_errors_exit_five() {
    let out = circ(&["tau", "C5(1,2)", "--out", "/nonexistent-dir/rows.json"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn out_file_receives_rows() {
    let dir = std::env::temp_dir().join(format!("circ-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rows.csv");
    let out = circ(&[
        "decompose",
        "C8(1,3)",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("\"C8(1,3)\",8,even,,4096,2,16,"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn oracle_ceiling_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_circ"))
        .args(["oracle", "C12(1,3)"])
        .env("CIRC_ORACLE_CEILING", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = circ(&["oracle", "C12(1,3)", "--oracle-ceiling", "12"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_fibonacci_family() {
    let out = circ(&["verify", "C*(1,2)", "--n-max", "30"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = rows(&out);
    assert_eq!(r.len(), 26);
    assert!(r.iter().all(|row| row["status"] == "pass"));
    assert_eq!(r.last().unwrap()["a"], "832040");
    assert_schema(&r);
}

#[test]
fn verify_steps_one_three_has_coefficient_two_at_even_n() {
    let out = circ(&["verify", "C*(1,3)", "--n-max", "24"]);
    assert_eq!(out.status.code(), Some(0));
    for row in rows(&out) {
        let n = row["n"].as_u64().unwrap();
        let want = if n % 2 == 0 { 2 } else { 1 };
        assert_eq!(row["coefficient"].as_u64(), Some(want), "n = {n}");
    }
}

#[test]
fn verify_diagonal_family() {
    let out = circ(&["verify", "C*(1,2;d)", "--n-max", "16", "--timings"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&out);
    assert!(r.iter().all(|row| row["timings_ms"].is_number()));
    assert_schema(&r);
}

#[test]
fn verify_isomorphic_pair() {
    let out = circ(&["verify", "C16-iso-pair"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&out);
    assert_eq!(r.len(), 2);
    assert_eq!(r[0]["tau"], r[1]["tau"]);
    assert_eq!(r[0]["tau"], "33525997568");
}

#[test]
fn mahler_golden_ratio_square() {
    let out = circ(&["mahler", "1,2", "--family", "even", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&out);
    for row in &r {
        let m = row["mahler"].as_f64().unwrap();
        assert!((m - 2.6180339887).abs() < 1e-9);
    }
    assert_eq!(r[0]["method"], "root-product");
    assert_eq!(r[1]["method"], "quadrature");
    assert_schema(&r);
}

#[test]
fn asymptote_csv_ratio_column() {
    let out = circ(&[
        "asymptote",
        "1,2,3",
        "--family",
        "diagonal",
        "--n",
        "5..25",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header = reader.headers().unwrap().clone();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let last = reader.records().last().unwrap().unwrap();
    assert_eq!(&last[col("spec")], "C25(1,2,3;d)");
    let ratio: f64 = last[col("ratio")].parse().unwrap();
    let k: f64 = last[col("mahler")].parse().unwrap();
    assert!((ratio - 1.0).abs() < 0.02, "ratio {ratio}");
    assert!((k - 32.7865).abs() < 1e-4, "K {k}");
}

#[test]
fn sequence_recursion_check() {
    let out = circ(&[
        "sequence",
        "2,3",
        "--n",
        "4..20",
        "--check-recursion",
        "1,1,1,-1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = rows(&out);
    assert_eq!(r.len(), 17);
    assert_eq!(r[0]["a"], "3");
    assert_eq!(r[16]["a"], "14592");
    assert_schema(&r);

    let wrong = circ(&[
        "sequence",
        "2,3",
        "--n",
        "4..20",
        "--check-recursion",
        "1,1,1,1",
    ]);
    assert_eq!(wrong.status.code(), Some(1));
    assert!(stderr(&wrong).contains("fails"));

    let seeded = circ(&[
        "sequence",
        "2,3",
        "--n",
        "4..12",
        "--check-recursion",
        "1,1,1,-1",
        "--seeds",
        "0,1,1,1",
    ]);
    assert_eq!(seeded.status.code(), Some(0));
}

#[test]
fn decompose_rows() {
    let out = circ(&["decompose", "C5(1,2)", "C3(1;d)", "C3(2;d)"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&out);
    let pairs: Vec<(u64, &str)> = r
        .iter()
        .map(|row| {
            (
                row["coefficient"].as_u64().unwrap(),
                row["a"].as_str().unwrap(),
            )
        })
        .collect();
    assert_eq!(pairs, vec![(1, "5"), (3, "3"), (1, "5")]);
    assert_schema(&r);
}

#[test]
fn output_is_deterministic() {
    let a = circ(&["verify", "C*(1,2,3)", "--n-max", "20"]);
    let b = circ(&["verify", "C*(1,2,3)", "--n-max", "20"]);
    assert_eq!(a.stdout, b.stdout);
}
