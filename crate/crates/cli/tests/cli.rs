use std::path::Path;
use std::process::{Command, Output};

fn cli(args: &[&str], out_dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delaunay-cmc"))
        .args(args)
        .env("DELAUNAY_CMC_OUTPUT_DIR", out_dir)
        .output()
        .expect("binary runs")
}

fn field(stdout: &[u8], name: &str) -> f64 {
    let text = String::from_utf8_lossy(stdout);
    let line = text.lines().find(|l| l.split_whitespace().next() == Some(name)).expect(name);
    line.split_whitespace().nth(1).unwrap().parse().unwrap()
}

#[test]
fn period_prints_both_methods() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["period", "--tau", "-1"], dir.path());
    assert!(o.status.success());
    for name in ["elliptic", "quadrature"] {
        assert!((field(&o.stdout, name) - 0.834_626_8).abs() < 1e-7);
    }
    assert!(field(&o.stdout, "difference") <= 1e-10);
    // 15 significant digits
    assert!(String::from_utf8_lossy(&o.stdout).contains("8.34626841674073e-1"));
}

#[test]
fn bifurcate_two_fold() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["bifurcate", "--j", "2", "--alpha", "0"], dir.path());
    assert!(o.status.success());
    let tau = field(&o.stdout, "tau");
    assert!(tau > -2.0 && tau < -std::f64::consts::SQRT_2, "{tau}");
    assert!(field(&o.stdout, "slope") < 0.0);
    assert_eq!(field(&o.stdout, "band_index"), 0.0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cli(&["period"], dir.path()).status.code(), Some(2));
    assert_eq!(cli(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(cli(&["period", "--tau", "3"], dir.path()).status.code(), Some(2));
    assert_eq!(cli(&["index", "--tau", "-2", "--j", "1"], dir.path()).status.code(), Some(2));
    assert_eq!(cli(&["verify", "--only", "1"], dir.path()).status.code(), Some(0));
}

#[test]
fn outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let runs = [
        vec!["profile", "--tau", "-1.5", "--samples", "64"],
        vec!["bands", "--tau", "-2", "--kmax", "3", "--alphas", "5"],
        vec!["flow", "--j", "3", "--alpha", "0.2", "--tau-from", "-1", "--tau-to", "-4", "--steps", "4"],
        vec!["mesh", "--j", "2", "--eta", "0.01", "--out", "m.obj", "--res-t", "16", "--res-theta", "16", "--periods", "1"],
    ];
    for args in &runs {
        let (x, y) = (cli(args, a.path()), cli(args, b.path()));
        assert!(x.status.success(), "{args:?}: {}", String::from_utf8_lossy(&x.stderr));
        let strip = |o: &Output, d: &Path| String::from_utf8_lossy(&o.stdout).replace(d.to_str().unwrap(), "");
        assert_eq!(strip(&x, a.path()), strip(&y, b.path()));
    }
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 5, "{names:?}");
    for n in names {
        assert_eq!(std::fs::read(a.path().join(&n)).unwrap(), std::fs::read(b.path().join(&n)).unwrap(), "{n:?}");
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let from_cfg = dir.path().join("from_cfg");
    std::fs::write(&cfg, format!("output_dir = {}\nprofile_samples = 32\n", from_cfg.display())).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_delaunay-cmc"))
        .args(["--config", cfg.to_str().unwrap(), "profile", "--tau", "-1"])
        .env_remove("DELAUNAY_CMC_OUTPUT_DIR")
        .output()
        .unwrap();
    assert!(o.status.success());
    let rows = std::fs::read_to_string(from_cfg.join("profile_tau-1.csv")).unwrap().lines().count();
    assert_eq!(rows, 34);
    // the environment overrides the file
    let env_dir = dir.path().join("from_env");
    let o = cli(&["--config", cfg.to_str().unwrap(), "profile", "--tau", "-1"], &env_dir);
    assert!(o.status.success());
    assert!(env_dir.join("profile_tau-1.json").exists());
    std::fs::write(&cfg, "fourier_modes = 8\n").unwrap();
    assert_eq!(cli(&["--config", cfg.to_str().unwrap(), "period", "--tau", "-1"], dir.path()).status.code(), Some(2));
}
