use std::path::Path;
use std::process::{Command, Output};

fn thermosep(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thermosep"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analytic_reports_reference_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = thermosep(dir.path(), &["analytic"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("59.68"), "{out}");
    assert!(out.contains("3435"), "{out}");
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "tau_x = 1.0\n").unwrap();
    let o = thermosep(dir.path(), &["--config", cfg.to_str().unwrap(), "analytic"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("tau_x"));
    let missing = thermosep(dir.path(), &["--config", "/nonexistent/run.toml", "analytic"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn sweep_rows_decrease() {
    let dir = tempfile::tempdir().unwrap();
    let o = thermosep(dir.path(), &["sweep", "--protocol", "symmetric", "--tau", "10,30,100,300"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("tau_s,w_ex_j,l2_over_tau_j"));
    let bound: Vec<f64> = lines.map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(bound.len(), 4);
    assert!(bound.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn geodesic_output_round_trips_and_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = thermosep(d.path(), &["geodesic"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for name in ["geodesic_summary.csv", "geodesic_0.csv", "geodesic_1.csv", "geodesic_2.csv"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name} differs between runs");
    }
    let summary = std::fs::read_to_string(a.path().join("geodesic_summary.csv")).unwrap();
    let lengths: Vec<f64> = summary.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(lengths.len(), 3);
    assert!((lengths[0] - 59.64).abs() <= 0.02 && (lengths[2] - 59.68).abs() <= 0.01);

    let proto = a.path().join("geodesic_0.csv");
    let o = thermosep(a.path(), &["simulate", "--protocol", proto.to_str().unwrap(), "--tau", "100"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let traj = std::fs::read_to_string(a.path().join("trajectory.csv")).unwrap();
    assert!(traj.starts_with("t_s,x_l,x_r,n_alpha_l,n_beta_r,temperature_k,work_j\n"));
    assert!(traj.lines().count() > 100);
}

#[test]
fn verify_passes_with_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let o = thermosep(dir.path(), &["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
