use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ust_core::harness::{load_uncertain_tsv, read_results};

fn ust(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ust")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = ust(args);
    assert!(out.status.success(), "ust {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Two classes of length-10 series; class "1" carries a spike.
fn write_split(dir: &Path, name: &str, n: usize, shift: f64) -> PathBuf {
    let mut text = String::new();
    for i in 0..n {
        let label = if i % 2 == 0 { "1" } else { "2" };
        text.push_str(label);
        for t in 0..10 {
            let base = ((i * 7 + t * 3) % 5) as f64 * 0.05 + shift;
            let v = if label == "1" && t == 2 + i % 5 { base + 4.0 } else { base };
            write!(text, "\t{v}").unwrap();
        }
        text.push('\n');
    }
    let path = dir.join(format!("Toy_{name}.tsv"));
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn inject_writes_a_round_trippable_file() {
    let dir = tempfile::tempdir().unwrap();
    let train = write_split(dir.path(), "TRAIN", 8, 0.0);
    let out = dir.path().join("toy.utsv");
    ok(&["inject", "--train", s(&train), "--c", "0.5", "--seed", "3", "--out", s(&out)]);
    let data = load_uncertain_tsv(&out).unwrap();
    assert_eq!(data.len(), 8);
    assert_eq!(data.series_len(), 10);
    assert!(data.series().iter().any(|s| s.deltas().iter().any(|&d| d > 0.0)));

    let again = ok(&["inject", "--train", s(&train), "--c", "0.5", "--seed", "3"]);
    assert_eq!(again, fs::read_to_string(&out).unwrap());
}

#[test]
fn select_prints_json() {
    let dir = tempfile::tempdir().unwrap();
    let train = write_split(dir.path(), "TRAIN", 8, 0.0);
    let text = ok(&["select", "--train", s(&train), "--k", "2", "--ordering", "stochastic", "--cdf-k", "20"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["dataset"], "Toy");
    assert_eq!(doc["ordering"], "stochastic");
    assert_eq!(doc["shapelets"].as_array().unwrap().len(), 2);
    assert_eq!(doc["shapelets"][0]["quality"], 1.0);
    assert_eq!(doc["evaluated"], doc["total_candidates"]);

    let utsv = dir.path().join("u.tsv");
    ok(&["inject", "--train", s(&train), "--c", "0.2", "--out", s(&utsv)]);
    let text = ok(&["select", "--train", s(&utsv), "--uncertain", "--k", "1"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["dataset"], "u");
}

#[test]
fn run_appends_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let train = write_split(dir.path(), "TRAIN", 10, 0.0);
    let test = write_split(dir.path(), "TEST", 6, 0.01);
    let csv = dir.path().join("results.csv");
    for classifier in ["gnb", "ugnb"] {
        ok(&[
            "run",
            "--train",
            s(&train),
            "--test",
            s(&test),
            "--classifier",
            classifier,
            "--k",
            "2",
            "--out",
            s(&csv),
        ]);
    }
    let rows = read_results(fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].model, "UST(UED, GNB)");
    assert_eq!(rows[1].model, "UST(UED, UGNB)");
    assert_eq!(rows[0].ordering, "interval");
    assert_eq!(rows[0].dataset, "Toy");
    assert!(rows.iter().all(|r| r.accuracy == 1.0));

    let stdout = ok(&["run", "--train", s(&train), "--test", s(&test), "--measure", "ed", "--k", "1"]);
    let rows = read_results(stdout.as_bytes()).unwrap();
    assert_eq!(rows[0].model, "ST");
    assert_eq!(rows[0].ordering, "natural");
}

#[test]
fn invalid_model_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let train = write_split(dir.path(), "TRAIN", 6, 0.0);
    let out =
        ust(&["run", "--train", s(&train), "--test", s(&train), "--classifier", "ugnb", "--measure", "dust-normal"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("valid combinations"), "{err}");

    let out = ust(&["run", "--train", s(&train), "--test", "/nonexistent/x.tsv"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("loading the test split"));
}

#[test]
fn bench_covers_the_grid() {
    let dir = tempfile::tempdir().unwrap();
    let train = write_split(dir.path(), "TRAIN", 8, 0.0);
    let test = write_split(dir.path(), "TEST", 4, 0.02);
    let csv = dir.path().join("bench.csv");
    ok(&[
        "bench",
        "--train",
        s(&train),
        "--test",
        s(&test),
        "--levels",
        "0.1,0.5",
        "--seeds",
        "1,2,3",
        "--k",
        "2",
        "--out",
        s(&csv),
    ]);
    let rows = read_results(fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(rows.len(), 5 * 2 * 3);
    let mut models: Vec<&str> = rows.iter().map(|r| r.model.as_str()).collect();
    models.dedup();
    assert_eq!(models, ["ST", "UST(DUST_NORMAL)", "UST(DUST_UNIFORM)", "UST(UED, GNB)", "UST(UED, UGNB)"]);
}
