use std::process::{Command, Output};

fn aimspin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aimspin")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("out.csv");
    std::fs::write(&cfg, "model = jt\nkappa_sq = 3  # overridden\nk = 0\nn_max = 6\nlevels = 1\n").unwrap();
    let o = aimspin(&[cfg.to_str().unwrap(), "--kappa-sq", "0.25", "--n-max", "10", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("level,energy,n_converged,converged,flagged_first_root"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!((row[1].parse::<f64>().unwrap() - 0.7738).abs() < 1e-3);
    assert_eq!(row[3], "true");
    assert!(csv.ends_with('\n') && !csv.contains('\r'));
}

#[test]
fn uncoupled_model_is_rejected() {
    let o = aimspin(&["--model", "jc", "--kappa", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("uncoupled system; use verify/closed-form"));
}

#[test]
fn bad_inputs_exit_one() {
    assert_eq!(aimspin(&["--model", "jt", "--kappa", "1", "--sweep", "kappa:0.1:1:1"]).status.code(), Some(1));
    assert_eq!(aimspin(&["--model", "nope"]).status.code(), Some(1));
    assert_eq!(aimspin(&["--no-such-flag"]).status.code(), Some(1));
    assert_eq!(aimspin(&["--model", "jt", "--set", "gamma1=1"]).status.code(), Some(1));
    assert_eq!(aimspin(&["/nonexistent/config"]).status.code(), Some(1));
}

#[test]
fn mjc_degenerate_pair() {
    let o = aimspin(&["--model", "mjc", "--omega0", "1/2", "--kappa", "1/3", "--levels", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().nth(1), Some("0,1.5,0,true,false"));
}

#[test]
fn unconverged_levels_exit_two() {
    // The lowest Jaynes-Cummings root belongs to the line that appears at the last depth.
    let o = aimspin(&["--model", "jc", "--kappa", "0.2", "--omega0", "0.3", "--k", "2", "--n-max", "8", "--levels", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("0,-5.19282032303,,false,"));
}

#[test]
fn table_point_needs_squared_coupling() {
    let o = aimspin(&["--model", "jt", "--kappa-sq", "0.25", "--n-max", "10"]);
    let row: Vec<String> = stdout(&o).lines().nth(1).unwrap().split(',').map(String::from).collect();
    assert!((row[1].parse::<f64>().unwrap() - 0.7738).abs() < 1e-3);
}

#[test]
fn sweep_is_deterministic_across_thread_counts() {
    let args = ["--model", "jc", "--kappa", "0.1", "--k", "1", "--n-max", "6", "--levels", "2", "--sweep", "kappa:0.1:0.3:3"];
    let a = aimspin(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_aimspin")).args(args).env("AIM_THREADS", "1").output().unwrap();
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 1 + 3 * 2);
}

#[test]
fn verify_suites_report_and_exit() {
    let ok = aimspin(&["--verify", "mjc"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).lines().all(|l| !l.starts_with("FAIL")));
    let fail = aimspin(&["--verify", "dirac"]);
    assert_eq!(fail.status.code(), Some(3));
    assert!(stdout(&fail).contains("FAIL dirac"));
    assert_eq!(aimspin(&["--verify", "bogus"]).status.code(), Some(1));
}
