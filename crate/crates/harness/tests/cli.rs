use std::process::Command;

fn sptree(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sptree")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn single_graph_commands() {
    let (code, out, _) = sptree(&["family", "K:4"]);
    assert_eq!((code, out.as_str()), (0, "C~\n"));
    let (code, out, _) = sptree(&["mu", "S:8,2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["mu"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    let (code, out, _) = sptree(&["contains", "S:20,2", "path:6"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"contained\":false"));
    let (code, out, _) = sptree(&["certify", "S:8,2", "--k", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("proves_equality"));
    let (code, out, _) = sptree(&["enumerate", "graphs", "--n", "5"]);
    assert_eq!((code, out.lines().count()), (0, 34));
    let (code, out, _) = sptree(&["enumerate", "trees", "--n", "8"]);
    assert_eq!((code, out.lines().count()), (0, 23));
}

#[test]
fn exit_codes() {
    assert_eq!(sptree(&["mu", "not graph6 at all!"]).0, 2);
    assert_eq!(sptree(&["verify", "nope", "--k", "2", "--n", "8"]).0, 2);
    assert_eq!(sptree(&["verify", "conjecture_a", "--k", "2", "--n", "10"]).0, 3);
    assert_eq!(sptree(&["enumerate", "graphs", "--n", "12"]).0, 3);
    assert_eq!(sptree(&["verify", "conjecture_a", "--k", "2", "--n", "8"]).0, 0);
    assert_eq!(sptree(&["verify", "conjecture_b", "--k", "2", "--n", "8"]).0, 1);
    let (code, _, err) = sptree(&[
        "verify",
        "conjecture_a",
        "--k",
        "2",
        "--n",
        "30",
        "--source",
        "perturb:split:1",
        "--budget",
        "1",
    ]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn verify_writes_reports_and_report_rerenders() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "campaign = conjecture_a\nk = 2\nn = 8\n").unwrap();
    let json = dir.path().join("r.json");
    let json2 = dir.path().join("r2.json");
    for path in [&json, &json2] {
        let (code, _, err) = sptree(&[
            "verify",
            "--config",
            cfg.to_str().unwrap(),
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
            "--no-timings",
            "--shards",
            "3",
        ]);
        assert_eq!(code, 0, "{err}");
    }
    assert_eq!(std::fs::read(&json).unwrap(), std::fs::read(&json2).unwrap());
    let (code, out, _) = sptree(&["report", json.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("campaign conjecture_a k=2 n=8..=8"));
    let (code, out, _) = sptree(&["report", json.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("#schema_version=1"));
}
