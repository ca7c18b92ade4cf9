use std::path::Path;
use std::process::{Command, Output};

use kgo_core::cli::{parse_config, sweep::HEADER};

const UNIT_SET: &str = "# every coupling set to 1\nM = 1\ne = 1\nPhiB = 1\nomega = 1\nlambda = 1\nB0 = 1\nOmega = 1\nalpha = 0.5\n";

fn kgo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgo")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn print_config_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "unit.conf", UNIT_SET);
    let out = kgo(&["--config", &path, "--print-config"]);
    assert!(out.status.success());
    assert_eq!(parse_config(&stdout(&out)).unwrap(), parse_config(UNIT_SET).unwrap());
}

#[test]
fn flat_limit_spectrum() {
    let out = kgo(&["--set", "omega=1", "--k", "1", "spectrum"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,l,k,E,residual,branch,c_next,poly_residual"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let e: f64 = row[3].parse().unwrap();
    assert!((e - 6f64.sqrt()).abs() < 1e-10);
    assert_eq!(row[5], "positive");
    assert!(lines.next().is_none());

    let both = stdout(&kgo(&["--set", "omega=1", "--k", "1", "spectrum", "--include-negative"]));
    assert_eq!(both.lines().count(), 3);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.conf", "M = 1\nalpha = 2\n");
    let out = kgo(&["--config", &bad, "spectrum"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    assert_eq!(kgo(&["--bogus"]).status.code(), Some(1));
    assert_eq!(kgo(&["--set", "nokey=1", "spectrum"]).status.code(), Some(1));
    assert_eq!(kgo(&["sweep", "--param", "M", "--from", "0", "--to", "1", "--steps", "3"]).status.code(), Some(1));
    // no root in the window
    assert_eq!(kgo(&["--set", "omega=1", "--window", "0,1", "spectrum"]).status.code(), Some(2));
    // no oscillator confinement
    assert_eq!(kgo(&["spectrum"]).status.code(), Some(2));
}

#[test]
fn sweep_to_file_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let conf = write(dir.path(), "unit.conf", UNIT_SET);
    let csv = dir.path().join("alpha.csv");
    let csv = csv.to_str().unwrap();
    let out = kgo(&[
        "--config", &conf, "--l", "1", "--k", "1", "--out", csv, "sweep", "--param", "alpha", "--from", "0.3",
        "--to", "1", "--steps", "8", "--family", "n=1,2,3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().next(), Some(HEADER));
    assert_eq!(text.lines().count(), 1 + 8 * 3);

    let check = kgo(&["--config", &conf, "--l", "1", "--k", "1", "verify", "--in", csv]);
    assert!(check.status.success());
    assert!(stdout(&check).starts_with("checked 24 rows, 0 above"));

    // same file against a different configuration fails verification
    let other = kgo(&["--config", &conf, "--set", "B0=2", "--l", "1", "--k", "1", "verify", "--in", csv]);
    assert_eq!(other.status.code(), Some(2));
}

#[test]
fn oracle_table_leaves_odd_degrees_empty() {
    let base = ["--set", "omega=1", "--set", "Omega=0.3", "--l", "1"];
    let odd = stdout(&kgo(&[&base[..], &["--n", "1", "oracle"]].concat()));
    assert!(odd.lines().nth(1).unwrap().ends_with(",,,"));

    let even = kgo(&[&base[..], &["--n", "2", "oracle", "--points", "2000"]].concat());
    assert!(even.status.success());
    let row: Vec<String> = stdout(&even).lines().nth(1).unwrap().split(',').map(String::from).collect();
    assert_eq!(row[4], "1");
    assert!(row[7].parse::<f64>().unwrap() < 1e-4);
}

#[test]
fn check_ab_pair_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let conf = write(dir.path(), "unit.conf", UNIT_SET);
    let out = stdout(&kgo(&["--config", &conf, "--n", "1", "--l", "1", "--k", "1", "check-ab", "--tau", "2"]));
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[3], "-1");
    assert!(row[5].parse::<f64>().unwrap() <= 2e-10);
}

#[test]
fn wavefunction_table() {
    let out = kgo(&["--set", "omega=1", "--n", "2", "wavefunction", "--points", "51", "--normalize"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 52);
    let first: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first[0], 0.0);
}
