use std::path::PathBuf;
use std::process::{Command, Output};

use nbldpc::formats::from_alist;
use nbldpc::matrix::MatrixJson;
use nbldpc::ExponentMatrix;
use serde_json::Value;

fn nbldpc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nbldpc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const CODE_A: [&str; 6] = ["--dts", "1,2,6;1,2,4", "--n", "3", "--field", "2^5"];

#[test]
fn pretty_sliding_matrix() {
    let mut args = vec!["construct"];
    args.extend(CODE_A);
    args.extend(["--j", "5", "--out", "pretty", "--blank-zeros"]);
    let o = nbldpc(&args);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0].split_whitespace().collect::<Vec<_>>(), ["a", "a^2", "1"]);
    assert_eq!(
        lines[5].split_whitespace().collect::<Vec<_>>(),
        ["a^6", "a^8", "a^2", "a^4", "a", "a^2", "1"]
    );
}

#[test]
fn json_and_alist_agree() {
    let mut args = vec!["construct"];
    args.extend(CODE_A);
    args.extend(["--j", "5", "--out", "json"]);
    let json = nbldpc(&args);
    let parsed: MatrixJson = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(parsed.schema, "nbldpc.matrix/1");
    let from_json = ExponentMatrix::from_json(&parsed).unwrap();
    assert_eq!((from_json.rows(), from_json.cols(), from_json.nnz()), (6, 18, 32));

    *args.last_mut().unwrap() = "alist";
    let alist = nbldpc(&args);
    assert_eq!(from_alist(&stdout(&alist)).unwrap(), from_json);
    // deterministic bytes
    assert_eq!(nbldpc(&args).stdout, alist.stdout);
}

#[test]
fn verify_exit_codes() {
    let o = nbldpc(&[
        "verify",
        "--dts",
        "1,2,6;2,3,5",
        "--field",
        "2^5",
        "--minors",
        "2",
        "--cycles",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["minors"][0]["failures"].as_array().unwrap().len(), 0);
    assert_eq!(report["field_bounds"]["q_2x2"], 12);

    // singular 6-cycles over GF(32) make the full check fail
    let o = nbldpc(&["verify", "--dts", "1,2,6;2,3,5", "--field", "2^5"]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["minors"][1]["failures"].as_array().unwrap().len(), 3);
    assert_eq!(report["cycles"][1]["frc_failures"].as_array().unwrap().len(), 3);

    let o = nbldpc(&[
        "verify",
        "--dts",
        "1,2,7;1,3,7",
        "--field",
        "7",
        "--minors",
        "2",
        "--cycles",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn spec_and_dts_files() {
    let spec = scratch(
        "code-b.json",
        r#"{"schema": "nbldpc.code/1", "n": 3, "field": "2^5", "sets": [[1, 2, 6], [2, 3, 5]]}"#,
    );
    let o = nbldpc(&["distance", "--spec", spec.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let profile: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(profile["column_distances"], serde_json::json!([1, 2, 3, 3, 3, 4]));
    assert_eq!(profile["free_distance"], serde_json::json!({"exact": 4}));

    let dts = scratch(
        "code-a-dts.json",
        r#"{"sets": [[1, 2, 6], [1, 2, 4]], "mode": "relaxed"}"#,
    );
    let o = nbldpc(&["construct", "--dts", dts.to_str().unwrap(), "--field", "32"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_nbldpc"))
        .args(["distance", "--dts", "1,2,6;1,2,4", "--field", "2^5"])
        .env("NBLDPC_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn search_density_and_field_suggestion() {
    let o = nbldpc(&[
        "search",
        "--sets",
        "1",
        "--size",
        "3",
        "--mode",
        "relaxed",
        "--min-element",
        "1",
    ]);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["sets"], serde_json::json!([[1, 2, 4]]));
    assert_eq!(r["scope"], 4);
    assert_eq!(r["certificate"]["exhausted_scopes"], serde_json::json!([3]));

    assert_eq!(
        stdout(&nbldpc(&[
            "density", "--n", "3", "--w", "3", "--mu", "5", "--length", "18"
        ])),
        "7/33\n"
    );
    let o = nbldpc(&["suggest-field", "--n", "3", "--scope", "6", "--w", "3"]);
    assert_eq!(stdout(&o), "q_2x2=12\nN_3x3=5\nsuggested=2^5\n");
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(
        nbldpc(&["construct", "--dts", "1,2,2", "--field", "2^5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        nbldpc(&["construct", "--dts", "1,2,6;1,2,4", "--n", "4", "--field", "2^5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nbldpc(&["construct", "--dts", "1,2,6;1,2,4", "--field", "2^21"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nbldpc(&["verify", "--dts", "1,2,6;1,2,4", "--field", "2^5", "--minors", "4"])
            .status
            .code(),
        Some(2)
    );
}
