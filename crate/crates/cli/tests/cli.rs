use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn corrset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corrset")).args(args).output().expect("spawn corrset")
}

fn run(cmd: &str, config: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![cmd, "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    corrset(&args)
}

fn write(dir: &Path, name: &str, body: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn error_of(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stderr).expect("error JSON on stderr");
    v["error"].clone()
}

#[test]
fn manifest_bit_count_matches_prefix_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.json",
        r#"{"schema_version": 1, "measure": {"type": "bernoulli", "p": "1/3"}, "stages": 4, "ascii": true}"#,
    );
    let out = run("synthesize", &cfg, &dir.path().join("o"), &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest: Value = serde_json::from_slice(&fs::read(dir.path().join("o/manifest.json")).unwrap()).unwrap();
    let bits: u64 = manifest["prefix"]["bits"].as_str().unwrap().parse().unwrap();
    let last_s: u64 = manifest["stages"][3]["S"].as_str().unwrap().parse().unwrap();
    assert_eq!(bits, last_s);
    let word = corrset_core::read_prefix_file(&dir.path().join("o/prefix.bin")).unwrap();
    assert_eq!(word.len() as u64, bits);
    let ascii = fs::read_to_string(dir.path().join("o/prefix.txt")).unwrap();
    assert_eq!(ascii.trim_end(), word.to_ascii());
}

#[test]
fn empty_grid_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "v.json", r#"{"measure": {"type": "bernoulli", "p": "1/3"}, "N_grid": []}"#);
    let out = run("verify", &cfg, &dir.path().join("o"), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["kind"], "validation");
}

#[test]
fn malformed_json_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "v.json", "{\"measure\": {\"type\": \"bernoulli\",\n \"p\": \"1/3\",}}");
    let out = run("verify", &cfg, &dir.path().join("o"), &[]);
    assert_eq!(out.status.code(), Some(2));
    let e = error_of(&out);
    assert_eq!(e["kind"], "parse");
    assert_eq!(e["line"], 2);
}

#[test]
fn oversized_prefix_is_refused_before_writing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.json", r#"{"measure": {"type": "bernoulli", "p": "1/2"}, "stages": 6}"#);
    let out = run("synthesize", &cfg, &dir.path().join("o"), &["--max-bits", "1000"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_of(&out)["kind"], "resource_limit");
    assert!(!dir.path().join("o/prefix.bin").exists());
}

#[test]
fn command_mismatch_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.json", r#"{"command": "verify", "measure": {"type": "bernoulli", "p": "1/2"}}"#);
    let out = run("synthesize", &cfg, &dir.path().join("o"), &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_finite_system() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "d.json",
        r#"{"measure": {"type": "finite_mps", "weights": ["1/4","1/4","1/2"], "permutation": [1,0,2], "set": [0]}}"#,
    );
    let out = run("decompose", &cfg, &dir.path().join("o"), &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_path(dir.path().join("o/decomposition.csv")).unwrap();
    let rows: Vec<(String, String)> = rdr
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[1].to_string(), r[4].to_string())
        })
        .collect();
    assert_eq!(rows, vec![("1/2".into(), "10".into()), ("1/2".into(), "0".into())]);
}

#[test]
fn verify_csv_reports_exact_values() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "v.json",
        r#"{"measure": {"type": "periodic", "word": "110"}, "N_grid": [300, 3000], "shifts": [[0], [0, 1]]}"#,
    );
    let out = run("verify", &cfg, &dir.path().join("o"), &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_path(dir.path().join("o/report.csv")).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["N", "shifts", "empirical", "exact", "abs_error", "stage"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(&rows[0][1], "0");
    assert_eq!(&rows[0][3], "2/3");
    assert_eq!(&rows[1][1], "0 1");
    assert_eq!(&rows[1][3], "1/3");
}

#[test]
fn reclab_periodic_odds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "r.json",
        r#"{"measure": {"type": "periodic", "word": "01"}, "set": {"kind": "odds"}, "eps": "1/8",
            "r_max": 99, "N": 100000, "n_max": 8}"#,
    );
    let out = run("reclab", &cfg, &dir.path().join("o"), &["--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&fs::read(dir.path().join("o/reclab.json")).unwrap()).unwrap();
    let text = v.to_string();
    assert!(text.contains("\"agree\":true"), "{text}");
}

#[test]
fn densities_over_shifted_intervals() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "f.json",
        r#"{"measure": {"type": "periodic", "word": "10"}, "n_max": 5,
            "folner": {"kind": "shifted_intervals", "offset": [0, 0, 1], "length": [0, 1]}, "translations": [2]}"#,
    );
    let out = run("densities", &cfg, &dir.path().join("o"), &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("o/densities.csv").exists());
    assert!(dir.path().join("o/defects.csv").exists());
}
