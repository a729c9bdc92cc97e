//! End-to-end tests of the `tridesign` binary: output determinism, exit
//! codes, and format agreement between JSON and CSV.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tridesign"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("no signal")
}

#[test]
fn scan_json_is_deterministic_and_exits_zero() {
    let args = ["scan", "--n-min", "3", "--n-max", "60", "--no-timestamp"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "byte-identical output without timestamp");
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["metadata"]["n_min"], 3);
    assert_eq!(v["metadata"]["n_max"], 60);
    assert!(v["metadata"]["timestamp"].is_null());
    // the only hit below n = 60: n = 22, M = 891 (case 3, m = 3)
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0]["n"], 22);
    assert_eq!(records[0]["M"], "891");
    assert_eq!(records[0]["status"], "KnownFamilyMatch");
    assert_eq!(records[0]["families"][0]["family"], "Case3");
    assert_eq!(records[1]["n"], 43);
}

#[test]
fn scan_csv_matches_json_record_count() {
    let json = run(&["scan", "--n-min", "3", "--n-max", "150", "--no-timestamp"]);
    let csv = run(&["scan", "--n-min", "3", "--n-max", "150", "--format", "csv"]);
    assert_eq!(code(&json), 0);
    assert_eq!(code(&csv), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    let json_count = v["records"].as_array().unwrap().len();
    let csv_rows = stdout(&csv).lines().count() - 1; // minus header
    assert_eq!(json_count, csv_rows);
    assert!(stdout(&csv).starts_with("n,M,T,status,"));
}

#[test]
fn scan_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.json");
    let o = run(&["scan", "--n-max", "30", "--no-timestamp", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["records"][0]["n"], 22);
}

#[test]
fn scan_usage_and_io_errors() {
    assert_eq!(code(&run(&["scan", "--n-min", "50", "--n-max", "10"])), 64);
    assert_eq!(code(&run(&["scan", "--n-min", "2", "--n-max", "10"])), 64);
    assert_eq!(code(&run(&["scan"])), 64); // missing --n-max
    let o = run(&["scan", "--n-max", "10", "--out", "/nonexistent-dir/x.json"]);
    assert_eq!(code(&o), 74);
}

#[test]
fn analyze_exceptional_pair_text() {
    let o = run(&["analyze", "--n", "341", "--t", "3744"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("(n, M) = (341, 638352)"));
    assert!(text.contains("(a, b, c) = (-1/7, -1/35, 1/14)"));
    assert!(text.contains("(X, Y, Z) = (23205, 406250, 208896)"));
    assert!(text.contains("verdict ContradictionNonInteger"));
    assert!(text.contains("status: SurvivorRefutedByDerived"));
}

#[test]
fn analyze_known_family_json() {
    let o = run(&["analyze", "--n", "22", "--m", "891", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "KnownFamilyMatch");
    assert_eq!(v["families"][0]["m"], 3);
    assert_eq!(v["inner_products"][0], "-1/2");
    assert_eq!(v["distribution"], serde_json::json!(["42", "512", "336"]));
}

#[test]
fn analyze_usage_errors() {
    // T*n odd: M would not be an integer
    assert_eq!(code(&run(&["analyze", "--n", "341", "--t", "3743"])), 64);
    assert_eq!(code(&run(&["analyze", "--n", "10"])), 64); // neither --t nor --m
    assert_eq!(code(&run(&["analyze", "--n", "10", "--t", "4", "--m", "20"])), 64);
}

#[test]
fn bound_values_and_pole() {
    let o = run(&["bound", "--n", "7", "--s", "1/3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "56");
    let o = run(&["bound", "--n", "341", "--s", "1/14"]);
    assert_eq!(stdout(&o).trim(), "638352");
    // s = 0 makes the denominator vanish
    assert_eq!(code(&run(&["bound", "--n", "3", "--s", "0"])), 64);
    assert_eq!(code(&run(&["bound", "--n", "3", "--s", "x/y"])), 64);
}

#[test]
fn check_design_fixtures() {
    let o = run(&["check-design", "--fixture", "e8_derived_56", "--exact"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("dimension 7 size 56"));
    assert!(text.contains("strength 5"));
    assert!(!text.contains("FAIL"));
    assert_eq!(code(&run(&["check-design", "--fixture", "hexagon"])), 0);
    // the regular 7-gon attains L_5 = 7 in dimension 2
    assert_eq!(code(&run(&["check-design", "--fixture", "heptagon"])), 0);
    assert_eq!(code(&run(&["check-design", "--fixture", "unknown"])), 64);
    // numeric fixture under --exact
    assert_eq!(code(&run(&["check-design", "--fixture", "icosahedron", "--exact"])), 65);
}

#[test]
fn check_design_from_file() {
    let hexagon = "design gram dim=2 size=6 exact\n\
        1 1/2 -1/2 -1 -1/2 1/2\n\
        1/2 1 1/2 -1/2 -1 -1/2\n\
        -1/2 1/2 1 1/2 -1/2 -1\n\
        -1 -1/2 1/2 1 1/2 -1/2\n\
        -1/2 -1 -1/2 1/2 1 1/2\n\
        1/2 -1/2 -1 -1/2 1/2 1\n";
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(hexagon.as_bytes()).unwrap();
    let o = run(&["check-design", "--file", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);

    // perturb one off-diagonal entry: no longer a spherical design
    let broken = hexagon.replace("1 1/2 -1/2 -1 -1/2 1/2", "1 1/2 -1/2 -1 -1/2 2/5");
    let mut g = tempfile::NamedTempFile::new().unwrap();
    g.write_all(broken.as_bytes()).unwrap();
    let o = run(&["check-design", "--file", g.path().to_str().unwrap()]);
    assert_ne!(code(&o), 0);

    // malformed: non-symmetric gram
    let mut h = tempfile::NamedTempFile::new().unwrap();
    h.write_all(b"design gram dim=2 size=2 exact\n1 1/2\n1/3 1\n").unwrap();
    let o = run(&["check-design", "--file", h.path().to_str().unwrap()]);
    assert_eq!(code(&o), 65);
}

#[test]
fn help_and_bad_subcommand() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["frobnicate"])), 64);
    assert_eq!(code(&run(&[])), 64);
}
