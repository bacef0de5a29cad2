mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn devtopo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_devtopo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn world(dir: &Path) -> (String, String) {
    let (ind, borders) = common::synthetic_world(6, 5, &[(2, 3)]);
    let i = dir.join("indicators.csv");
    let b = dir.join("borders.csv");
    fs::write(&i, ind).unwrap();
    fs::write(&b, borders).unwrap();
    (i.display().to_string(), b.display().to_string())
}

#[test]
fn every_subcommand_writes_its_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let (data, borders) = world(dir.path());
    let out = dir.path().join("out");
    let out_s = out.display().to_string();

    let runs: [(&[&str], &[&str]); 5] = [
        (&["barcode", "--indicators", "GDP,LE,IM,GNI"], &["barcode.csv", "barcode.svg"]),
        (&["clusters", "--eps", "0.1,0.3"], &["clusters_0.1.csv", "summary_0.1.csv", "clusters_0.3.csv"]),
        (&["kmeans", "--k", "3", "--restarts", "5"], &["kmeans_3.csv"]),
        (&["stats", "--indicators", "GDP,LE,IM,GNI"], &["stats.csv", "dataset.csv"]),
        (&["cycles", "--borders", &borders], &["cycles.json", "cycles.txt"]),
    ];
    for (args, files) in runs {
        let mut full = args.to_vec();
        full.extend(["--data", &data, "--out", &out_s]);
        let o = devtopo(&full);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        for f in files {
            assert!(out.join(f).is_file(), "{args:?} did not write {f}");
        }
    }

    let csv = fs::read_to_string(out.join("barcode.csv")).unwrap();
    assert!(csv.starts_with("dim,birth,death,representative\n"));
    let clusters = fs::read_to_string(out.join("clusters_0.1.csv")).unwrap();
    assert!(clusters.starts_with("country,cluster_id,cluster_size\n"));
    // 30 grid countries, one missing IM, plus the island
    assert_eq!(clusters.lines().count(), 1 + 31);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("cycles.json")).unwrap()).unwrap();
    assert!(json.is_array());
    let stats = fs::read_to_string(out.join("stats.csv")).unwrap();
    assert_eq!(stats.lines().count(), 5);
}

#[test]
fn config_file_feeds_flags() {
    let dir = tempfile::tempdir().unwrap();
    let (data, _) = world(dir.path());
    let out = dir.path().join("cfg-out");
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        format!("data = {:?}\nout = {:?}\nk = 4\nrestarts = 3\n", data, out.display().to_string()),
    )
    .unwrap();
    let o = devtopo(&["kmeans", "--config", &cfg.display().to_string()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.join("kmeans_4.csv").is_file());
}

#[test]
fn failures_exit_nonzero_and_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let (data, _) = world(dir.path());
    let out = dir.path().join("bad");
    let out_s = out.display().to_string();

    let o = devtopo(&["cycles", "--data", &data, "--out", &out_s]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--borders"));

    let missing = dir.path().join("nope.csv").display().to_string();
    let o = devtopo(&["barcode", "--data", &missing, "--out", &out_s]);
    assert_eq!(o.status.code(), Some(1));

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "country,indicator,year,value\nAA,XX,2015,1\n").unwrap();
    let o = devtopo(&["barcode", "--data", &bad.display().to_string(), "--out", &out_s]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let o = devtopo(&["clusters", "--data", &data, "--eps", "5", "--out", &out_s]);
    assert_eq!(o.status.code(), Some(1));

    assert!(!out.exists());
}
