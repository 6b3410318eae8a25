use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_splitgeom"));
    c.env_remove("SPLITGEOM_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn exact_init() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/exact_k1.json")
}

#[test]
fn verify_algebra_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["verify-algebra", "--samples", "500", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["tool"], "splitgeom");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["sign_table"], "(-,-,-)");
    assert_eq!(v["pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["residual"].is_number() && c["tolerance"].is_number()));
}

#[test]
fn injected_fault_exits_one_and_names_the_check() {
    let o = run(&["verify-algebra", "--samples", "200", "--inject-fault", "sign-flip"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let failing: Vec<_> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    assert!(failing.contains(&"multiplication_table".to_string()));
    assert_eq!(code(&run(&["verify-algebra", "--inject-fault", "bogus"])), 2);
}

#[test]
fn usage_and_config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "[flat-obstruction\nn = 1").unwrap();
    assert_eq!(code(&run(&["--config", bad.to_str().unwrap(), "verify-algebra"])), 2);
    std::fs::write(&bad, "[flat-obstruction]\nnn = 1\n").unwrap();
    assert_eq!(code(&run(&["flat-obstruction", "--config", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["--config", "/nonexistent.toml", "verify-algebra"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
    assert_eq!(code(&run(&["flat-obstruction", "--points", "many"])), 2);
    assert_eq!(code(&run(&["flat-obstruction", "--points", "0"])), 2);
    assert_eq!(code(&run(&["flat-obstruction", "--rho2-tol", "-1"])), 2);
    assert_eq!(code(&run(&["nahm", "run"])), 2);
    assert_eq!(code(&run(&["nahm", "run", "--init", "/nonexistent.json"])), 2);
    let init = exact_init();
    assert_eq!(code(&run(&["nahm", "run", "--init", init.to_str().unwrap(), "--steps", "1"])), 2);
    assert_eq!(code(&run(&["nahm", "run", "--init", init.to_str().unwrap(), "--algebra", "/nonexistent.json"])), 2);
    assert_eq!(code(&run(&["nahm", "degeneracy-scan", "--family", "const-t9"])), 2);
    assert_eq!(code(&run(&["nahm", "degeneracy-scan", "--from", "4", "--to", "1"])), 2);
    let o = bin().args(["verify-algebra", "--samples", "10"]).env("SPLITGEOM_THREADS", "zero").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn init_dimension_mismatch_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let init = dir.path().join("init.json");
    std::fs::write(&init, r#"{"t1": [1, 0], "t2": [0, 1, 0], "t3": [0, 0, 1]}"#).unwrap();
    assert_eq!(code(&run(&["nahm", "run", "--init", init.to_str().unwrap()])), 2);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "[flat-obstruction]\nn = 2\npoints = 5\nseed = 9\n").unwrap();
    let c = cfg.to_str().unwrap();
    let o = run(&["--config", c, "flat-obstruction"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    let o = run(&["--config", c, "flat-obstruction", "--points", "3"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 4);
    // same seed and n from the file as from explicit flags
    let explicit = run(&["flat-obstruction", "--n", "2", "--points", "5", "--seed", "9"]);
    assert_eq!(text.as_bytes(), explicit.stdout.as_slice());
}

#[test]
fn flat_obstruction_csv() {
    let o = run(&["flat-obstruction", "--n", "1", "--points", "1000", "--seed", "0"]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["index", "rho0", "half_norm_sq", "rho0_error", "rho2_norm", "chi2_norm"]);
    let mut rows = 0;
    for rec in r.records() {
        let rec = rec.unwrap();
        let rho2: f64 = rec[4].parse().unwrap();
        assert!(rho2 <= 1e-10);
        rows += 1;
    }
    assert_eq!(rows, 1000);
}

#[test]
fn tight_tolerance_is_a_check_failure() {
    let o = run(&["flat-obstruction", "--n", "1", "--points", "50", "--rho0-tol", "1e-300"]);
    assert_eq!(code(&o), 1);
    let o = run(&["verify-sasakian", "--n", "1", "--points", "3", "--fd-tol", "1e-300"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn verify_sasakian_report() {
    let o = run(&["verify-sasakian", "--n", "1", "--points", "10", "--seed", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "verify-sasakian");
    assert_eq!(v["sign_table"], "(-,-,-)");
    assert_eq!(v["conventions"]["reeb_tau"], serde_json::json!([1.0, -1.0, -1.0]));
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["name"] == "normality"));
}

#[test]
fn nahm_run_conserves() {
    let init = exact_init();
    let o =
        run(&["nahm", "run", "--init", init.to_str().unwrap(), "--steps", "1000", "--reduced", "--drift-tol", "1e-10"]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let header = r.headers().unwrap().clone();
    assert_eq!(header.len(), 14);
    assert_eq!(&header[0], "t");
    assert_eq!(&header[1], "T0_1");
    assert_eq!(&header[13], "conserved");
    let c: Vec<f64> = r.records().map(|x| x.unwrap()[13].parse().unwrap()).collect();
    assert_eq!(c.len(), 1001);
    assert!(c.iter().all(|v| (v - c[0]).abs() <= 1e-10));
}

#[test]
fn custom_algebra_file() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("so3.json");
    let mut c = vec![vec![vec![0.0; 3]; 3]; 3];
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        c[i][j][k] = 1.0;
        c[j][i][k] = -1.0;
    }
    let ip = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
    std::fs::write(&alg, serde_json::json!({"dim": 3, "c": c, "ip": ip}).to_string()).unwrap();
    let init = exact_init();
    let a =
        run(&["nahm", "run", "--init", init.to_str().unwrap(), "--algebra", alg.to_str().unwrap(), "--steps", "50"]);
    let b = run(&["nahm", "run", "--init", init.to_str().unwrap(), "--steps", "50"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    // not antisymmetric
    c[0][1][2] = 2.0;
    std::fs::write(&alg, serde_json::json!({"dim": 3, "c": c, "ip": ip}).to_string()).unwrap();
    let o = run(&["nahm", "run", "--init", init.to_str().unwrap(), "--algebra", alg.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn degeneracy_scan_root_file() {
    let dir = tempfile::tempdir().unwrap();
    let scan = dir.path().join("scan.csv");
    let roots = dir.path().join("roots.csv");
    let o = run(&[
        "nahm",
        "degeneracy-scan",
        "--family",
        "const-t2",
        "--from",
        "0.5",
        "--to",
        "4",
        "--samples",
        "100",
        "--out",
        scan.to_str().unwrap(),
        "--roots",
        roots.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_path(&roots).unwrap();
    let params: Vec<f64> = r.records().map(|x| x.unwrap()[0].parse().unwrap()).collect();
    assert_eq!(params.len(), 1);
    assert!((params[0] - std::f64::consts::PI).abs() <= 1e-6);
    assert!(std::fs::read_to_string(&roots).unwrap().contains("3.14159"));
    let rows = csv::Reader::from_path(&scan).unwrap().records().count();
    assert_eq!(rows, 100);
}

#[test]
fn help_and_version() {
    assert_eq!(code(&run(&["--help"])), 0);
    let o = run(&["--version"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().contains(env!("CARGO_PKG_VERSION")));
    // the fault flag is a test hook
    let help = String::from_utf8(run(&["verify-algebra", "--help"]).stdout).unwrap();
    assert!(!help.contains("inject-fault"));
}
