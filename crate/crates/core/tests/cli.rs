use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const CUBIC: &str = r#"{ "orders": [
    { "p": 1, "terms": [ { "gain": { "constant": 1 }, "factors": [[1]] } ] },
    { "p": 3, "terms": [ { "gain": { "constant": 0.1 }, "factors": [[1], [1], [1]] } ] } ] }"#;

const DENSE: &str = r#"{ "orders": [
    { "p": 1, "terms": [ { "gain": { "constant": 1 }, "factors": [[1]] } ] },
    { "p": 2, "terms": [ { "gain": { "constant": 0.01 },
        "dense": { "offsets": [0, 0], "extents": [30, 30], "values": [] } } ] } ] }"#;

fn voltlin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_voltlin"))
        .args(args)
        .env_remove("VOLTLIN_BUDGET")
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn psi_prints_report() {
    let dir = TempDir::new().unwrap();
    let sys = write(dir.path(), "h.json", CUBIC);
    let o = voltlin(&["psi", "--system", &sys, "--bound", "1", "--range", "0:4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!((v["sup_psi"].as_f64().unwrap() - 0.7).abs() < 1e-12);
    assert_eq!(v["satisfied"], true);
    assert_eq!(v["trace"].as_array().unwrap().len(), 4);
}

#[test]
fn psi_strict_exits_four_when_violated() {
    let dir = TempDir::new().unwrap();
    let sys = write(dir.path(), "h.json", CUBIC);
    let o = voltlin(&["psi", "--system", &sys, "--bound", "2", "--range", "0:4", "--strict"]);
    assert_eq!(o.status.code(), Some(4));
    let o = voltlin(&["psi", "--system", &sys, "--bound", "2", "--range", "0:4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn invalid_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let sys = write(dir.path(), "h.json", CUBIC);
    let bad = write(dir.path(), "bad.json", r#"{ "orders": [], "x": 1 }"#);
    for args in [
        vec!["psi", "--system", bad.as_str(), "--bound", "1", "--range", "0:4"],
        vec!["psi", "--system", sys.as_str(), "--bound", "-1", "--range", "0:4"],
        vec!["psi", "--system", sys.as_str(), "--bound", "1", "--range", "4:4"],
        vec!["psi", "--system", "/nonexistent.json", "--bound", "1", "--range", "0:4"],
        vec!["scenario", "--mode", "sideways", "--B", "1"],
        vec!["scenario", "--mode", "post", "--B", "1", "--iters", "2", "--at", "5"],
    ] {
        assert_eq!(voltlin(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn budget_overflow_exits_three() {
    let dir = TempDir::new().unwrap();
    let values = vec!["0.001"; 900].join(",");
    let sys = write(dir.path(), "h.json", &DENSE.replace("[]", &format!("[{values}]")));
    let ok = voltlin(&["psi", "--system", &sys, "--bound", "1", "--range", "0:2"]);
    assert_eq!(ok.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_voltlin"))
        .args(["psi", "--system", &sys, "--bound", "1", "--range", "0:2"])
        .env("VOLTLIN_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn scenario_csv_table() {
    let o = voltlin(&["scenario", "--preset", "amplifier", "--mode", "post", "--B", "0.75", "--iters", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r,snr_db");
    assert_eq!(lines.len(), 5);
    let snr: Vec<f64> = lines[1..].iter().map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!(snr.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn scenario_strict_at_large_bound() {
    let o = voltlin(&["scenario", "--mode", "pre", "--B", "1.3", "--strict", "--out", "json"]);
    assert_eq!(o.status.code(), Some(4));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["psi"]["satisfied"], false);
}

#[test]
fn scenario_signal_outputs_to_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("err.csv");
    let p = path.to_str().unwrap();
    let o = voltlin(&["scenario", "--mode", "post", "--B", "1", "--out", "error", "--at", "2", "--output", p]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,real,imag\n"));
    assert_eq!(text.lines().count(), 501);
}

#[test]
fn linearize_round_trip() {
    let dir = TempDir::new().unwrap();
    let sys = write(dir.path(), "h.json", CUBIC);
    let inv = write(dir.path(), "q.json", r#"{ "taps": [1], "first_lag": 0 }"#);
    // y = x + 0.1x³ for x = 0.5: 0.5125
    let input = write(dir.path(), "y.csv", "n,real,imag\n0,0.5125,0\n1,0,0\n");
    let o = voltlin(&["linearize", "--system", &sys, "--inverse", &inv, "--mode", "post", "--input", &input, "--iters", "30"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let first: f64 = text.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((first - 0.5).abs() < 1e-10);
    let o = voltlin(&["linearize", "--system", &sys, "--inverse", &inv, "--mode", "pre", "--input", &input]);
    assert_eq!(o.status.code(), Some(0));
    let broken = write(dir.path(), "bad.csv", "n,real,imag\n0,1,0\n2,0,0\n");
    let o = voltlin(&["linearize", "--system", &sys, "--inverse", &inv, "--mode", "post", "--input", &broken]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_rows() {
    let o = voltlin(&["sweep", "--bounds", "0.75,1", "--iters", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("mode,bound,r,snr_db,sup_psi"));
    assert_eq!(lines.count(), 2 * 2 * 3);
}

#[test]
fn repeated_runs_are_identical() {
    let a = voltlin(&["scenario", "--mode", "pre", "--B", "1", "--out", "output"]);
    let b = voltlin(&["scenario", "--mode", "pre", "--B", "1", "--out", "output"]);
    assert_eq!(a.stdout, b.stdout);
}
