use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cpl(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpl"))
        .args(args)
        .env("CPL_CACHE_DIR", cache)
        .env_remove("CPL_TOL")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn params_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = cpl(&["params", "7", "2"], dir.path());
    assert_eq!(code(&out), 0);
    let v = json(&out);
    for (key, want) in [
        ("s", 2),
        ("r", 1),
        ("m", 0),
        ("t", 1),
        ("pPrime", 3),
        ("chi", 4),
    ] {
        assert_eq!(v[key], want, "{key}");
    }
    assert_eq!(v["spectralApplicable"], true);

    let v = json(&cpl(&["params", "9", "2"], dir.path()));
    assert_eq!(v["turanApplicable"], false);
    assert_eq!(v["chi"], 3);

    let out = cpl(&["params", "4", "2"], dir.path());
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("complete-graph regime"));
    assert_eq!(json(&out)["regime"], "complete");
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&cpl(&["params", "x", "2"], dir.path())), 2);
    assert_eq!(code(&cpl(&["frobnicate"], dir.path())), 2);
    assert_eq!(
        code(&cpl(
            &["export", "complete:3", "--format", "png"],
            dir.path()
        )),
        2
    );
    assert_eq!(code(&cpl(&["export", "wheel:5"], dir.path())), 2);
    assert_eq!(
        code(&cpl(
            &["export", "params:7:2", "--format", "dot"],
            dir.path()
        )),
        2
    );
    assert_eq!(
        code(&cpl(&["verify-spectral", "30", "9", "2"], dir.path())),
        2
    );
    assert_eq!(
        code(&cpl(&["--tol", "0", "params", "7", "2"], dir.path())),
        2
    );
}

#[test]
fn verify_lemma2_passes_on_the_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = cpl(
        &["--json", "verify-lemma2", "--kmax", "14", "--pmax", "3"],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["schema"], "cpl.verification");
    assert_eq!(v["schemaVersion"], 1);
    assert_eq!(v["pass"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 12 + 10 + 8);
}

#[test]
fn verify_lemma2_r0_rows_skip_criticality() {
    let dir = tempfile::tempdir().unwrap();
    let out = cpl(
        &[
            "--json",
            "verify-lemma2",
            "--kmin",
            "9",
            "--kmax",
            "9",
            "--pmax",
            "2",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    // k=9: p=1 has r=1, p=2 has r=0.
    let r0 = rows.iter().find(|r| r["label"] == "k=9 p=2").unwrap();
    let names: Vec<&str> = r0["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["chi", "residue-coloring"]);
    assert!(r0["notes"][0].as_str().unwrap().contains("skipped"));
}

#[test]
fn corrupted_matching_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = cpl(
        &[
            "--json",
            "verify-lemma2",
            "--kmax",
            "8",
            "--pmax",
            "2",
            "--corrupt-b",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["pass"], false);
    let failing: Vec<&Value> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["checks"].as_array().unwrap())
        .filter(|c| c["pass"] == false)
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|c| c["name"] == "reduced-coloring"));
    assert!(failing[0]["detail"]
        .as_str()
        .unwrap()
        .contains("monochromatic"));
}

#[test]
fn verify_spectral_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = cpl(&["--json", "verify-spectral", "30", "11", "2"], dir.path());
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(v["rows"][0]["data"]["lambda"].as_f64().unwrap() > 20.0);

    let v = json(&cpl(
        &["--json", "verify-spectral", "10", "11", "2"],
        dir.path(),
    ));
    assert_eq!(v["pass"], true);
    let data = &v["rows"][0]["data"];
    let l = 3.0 + 3.0 * 2f64.sqrt();
    assert!((data["lambda"].as_f64().unwrap() - l).abs() < 1e-10);
    for x in data["partEntries"].as_array().unwrap() {
        assert!((x.as_f64().unwrap() - (l + 1.0) / (l + 3.0)).abs() < 1e-10);
    }
    assert_eq!(data["apexEntry"], 1.0);

    let out = cpl(&["--json", "verify-spectral", "30", "8", "2"], dir.path());
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(v["rows"][0]["notes"][0].as_str().unwrap().contains("t = s"));
}

#[test]
fn search_ex_and_spex() {
    let dir = tempfile::tempdir().unwrap();
    let out = cpl(&["--json", "search", "ex", "7", "5", "2"], dir.path());
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["value"], 18);
    assert_eq!(v["exhaustive"], true);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 1);
    assert_eq!(v["cached"], false);

    let v = json(&cpl(
        &["--json", "search", "spex", "7", "5", "2"],
        dir.path(),
    ));
    assert!((v["value"].as_f64().unwrap() - (2.0 + 10f64.sqrt())).abs() < 1e-9);
    // The ex and spex witnesses are the same graph.
    let ex = json(&cpl(&["--json", "search", "ex", "7", "5", "2"], dir.path()));
    assert_eq!(ex["cached"], true);
    assert_eq!(ex["witnesses"], v["witnesses"]);
}

#[test]
fn search_cap_and_heuristic() {
    let dir = tempfile::tempdir().unwrap();
    let out = cpl(&["search", "spex", "30", "7", "2"], dir.path());
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("heuristic"));

    let args = [
        "--json",
        "search",
        "spex",
        "30",
        "7",
        "2",
        "--heuristic",
        "--seed",
        "1",
        "--starts",
        "1",
        "--steps",
        "20",
        "--no-cache",
    ];
    let a = json(&cpl(&args, dir.path()));
    assert_eq!(a["exhaustive"], false);
    assert!(a["value"].as_f64().unwrap() >= 20.0 - 1e-9);
    assert!(a["method"].as_str().unwrap().contains("seed=1"));
    let b = json(&cpl(&args, dir.path()));
    for key in ["value", "witnesses", "method"] {
        assert_eq!(a[key], b[key], "{key}");
    }
}

#[test]
fn tampered_cache_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&cpl(&["search", "ex", "6", "5", "2"], dir.path())), 0);
    let records = dir.path().join("records.jsonl");
    let text = std::fs::read_to_string(&records).unwrap();
    std::fs::write(&records, text.replace("\"value\":13", "\"value\":14")).unwrap();
    let out = cpl(&["--json", "search", "ex", "6", "5", "2"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("quarantined"));
    assert_eq!(json(&out)["value"], 13);
    assert_eq!(json(&out)["cached"], false);
    assert!(dir.path().join("quarantine.jsonl").exists());
}

#[test]
fn export_formats() {
    let dir = tempfile::tempdir().unwrap();
    let out = cpl(&["export", "complete:3"], dir.path());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "Bw");

    let file = dir.path().join("c72.dot");
    let out = cpl(
        &[
            "export",
            "power:7:2",
            "--format",
            "dot",
            "-o",
            file.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let dot = std::fs::read_to_string(&file).unwrap();
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 14);
    let nodes = dot
        .lines()
        .filter(|l| l.trim().trim_end_matches(';').parse::<usize>().is_ok())
        .count();
    assert_eq!(nodes, 7);

    let v = json(&cpl(
        &["export", "extremal:10:11:2", "--format", "json"],
        dir.path(),
    ));
    assert_eq!(v["order"], 10);
    assert_eq!(v["size"], 36);

    let v = json(&cpl(
        &["export", "spectral:10:11:2", "--format", "json"],
        dir.path(),
    ));
    assert_eq!(v["schema"], "cpl.verification");
    assert_eq!(v["command"], "verify-spectral");
    assert!(v["rows"].is_array() && v["config"].is_object() && v["pass"].is_boolean());
}

#[test]
fn config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let run = |env_tol: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_cpl"));
        c.env("CPL_CACHE_DIR", dir.path()).env_remove("CPL_TOL");
        if let Some(t) = env_tol {
            c.env("CPL_TOL", t);
        }
        if let Some(t) = flag {
            c.args(["--tol", t]);
        }
        c.args(["--json", "verify-spectral", "10", "11", "2"]);
        json(&c.output().unwrap())["config"].clone()
    };
    let c = run(None, None);
    assert_eq!(
        (c["tol"].as_f64(), c["tolSource"].as_str()),
        (Some(1e-12), Some("default"))
    );
    assert_eq!(c["cacheDirSource"], "env");
    let c = run(Some("1e-10"), None);
    assert_eq!(
        (c["tol"].as_f64(), c["tolSource"].as_str()),
        (Some(1e-10), Some("env"))
    );
    let c = run(Some("1e-10"), Some("1e-11"));
    assert_eq!(
        (c["tol"].as_f64(), c["tolSource"].as_str()),
        (Some(1e-11), Some("flag"))
    );
}
