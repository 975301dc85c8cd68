use std::path::Path;
use std::process::{Command as Process, Output};

use gpp_lab::config::BoxRadius;
use gpp_lab::{config_hash, Command, LabError, LoadedConfig, RunConfig, Target};
use tempfile::TempDir;

fn lab(config: &str, dir: &Path) -> Output {
    let path = dir.join("run.toml");
    std::fs::write(&path, config).unwrap();
    Process::new(env!("CARGO_BIN_EXE_gpp-lab"))
        .arg(&path)
        .arg("--output-dir")
        .arg(dir.join("out"))
        .arg("--quiet")
        .output()
        .unwrap()
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn defaults_fill_in_optional_sections() {
    let cfg = RunConfig::parse("command = \"solve\"\nalpha = 2.0\nrho = 1.0\n").unwrap();
    assert_eq!(cfg.command, Command::Solve);
    assert_eq!(cfg.target, Target::Minimizer);
    assert_eq!(cfg.grid.n, 2048);
    assert_eq!(cfg.grid.r_max, BoxRadius::default());
    assert_eq!(cfg.parallelism, 1);

    let fixed =
        RunConfig::parse("command = \"solve\"\nalpha = 2.0\nrho = 1.0\n[grid]\nn = 512\nr_max = 20.0\n").unwrap();
    assert_eq!(fixed.grid.r_max, BoxRadius::Fixed(20.0));
    assert_eq!(fixed.grid.policy().r_max, Some(20.0));
}

#[test]
fn invalid_configurations_are_rejected() {
    let cases = [
        "command = \"solve\"\nalpha = 2.0\nrho = 1.0\ncolour = \"blue\"\n",
        "command = \"solve\"\nalpha = 3.0\nrho = 1.0\n",
        "command = \"solve\"\nalpha = 2.0\n",
        "command = \"sweep\"\nalpha = 2.0\n",
        "command = \"sweep\"\nalpha = 2.0\nrho_list = [2.0, 1.0]\n",
        "command = \"sweep\"\nalpha = 2.0\nrho_list = [1.0]\nparallelism = 0\n",
        "command = \"solve\"\nalpha = 2.0\nrho = 1.0\n[grid]\nr_max = \"large\"\n",
    ];
    for text in cases {
        let err = RunConfig::parse(text).unwrap_err();
        assert!(matches!(err, LabError::Config(_)), "{text}: {err}");
        assert_eq!(err.exit_code(), 2);
    }
}

#[test]
fn hash_tracks_the_file_text() {
    let text = "command = \"verify\"\nalpha = 2.0\n";
    let loaded = LoadedConfig::from_text(text).unwrap();
    assert_eq!(loaded.hash, config_hash(text));
    assert_eq!(loaded.hash.len(), 64);
    assert_ne!(config_hash(&format!("{text}\n")), loaded.hash);
}

#[test]
fn unknown_key_exits_with_configuration_status() {
    let dir = TempDir::new().unwrap();
    let out = lab("command = \"solve\"\nalpha = 2.0\nrho = 1.0\ncolour = \"blue\"\n", dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}

#[test]
fn solve_is_deterministic_and_carries_the_hash() {
    let config = "command = \"solve\"\nalpha = 2.0\nrho = 2.0\n[grid]\nn = 1024\n";
    let runs: Vec<(TempDir, Vec<u8>)> = (0..2)
        .map(|_| {
            let dir = TempDir::new().unwrap();
            let out = lab(config, dir.path());
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            let bytes = std::fs::read(dir.path().join("out/solve.json")).unwrap();
            (dir, bytes)
        })
        .collect();
    assert_eq!(runs[0].1, runs[1].1);

    let json = read_json(&runs[0].0.path().join("out/solve.json"));
    assert_eq!(json["config_hash"], config_hash(config));
    assert_eq!(json["summary"]["converged"], true);
    assert!(json["summary"]["energy"].as_f64().unwrap() < 0.0);
    let profile = std::fs::read_to_string(runs[0].0.path().join("out/profile.dat")).unwrap();
    assert!(profile.contains(&config_hash(config)));
}

#[test]
fn sweep_writes_a_decreasing_branch() {
    let dir = TempDir::new().unwrap();
    let config =
        "command = \"sweep\"\nalpha = 2.0\nrho_list = [1.0, 2.0, 3.0, 4.0]\nspot_checks = 0\n[grid]\nn = 1024\n";
    let out = lab(config, dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let csv = std::fs::read_to_string(dir.path().join("out/branch-minimizer.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), format!("# config_hash = {}", config_hash(config)));
    assert_eq!(lines.next().unwrap(), "alpha,rho,m,lambda,A,B,C,kind,converged");
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r[8] == "true"));
    let m: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(m.windows(2).all(|w| w[1] < w[0]), "{m:?}");

    let fits = read_json(&dir.path().join("out/fits-minimizer.json"));
    assert_eq!(fits["family"], "minimizer");
    assert!(fits["shape"].is_object());
}

#[test]
fn verify_passes_for_the_newtonian_order() {
    let dir = TempDir::new().unwrap();
    let out = lab("command = \"verify\"\nalpha = 2.0\n", dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = read_json(&dir.path().join("out/verify.json"));
    assert_eq!(report["passed"], true);
    assert_eq!(report["failed"], 0);
    assert_eq!(report["checks"].as_array().unwrap().len(), 18);
}
