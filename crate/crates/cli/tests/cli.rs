use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_barnesbeta")).args(args).env("BARNESBETA_THREADS", "2").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = run(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn xi_at_two() {
    let o = run(&["xi", "--eval", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0.5235988");
}

#[test]
fn eta_worked_example() {
    let v = json(&["--format", "json", "eta", "--M", "2", "--N", "2", "--a", "1,2", "--b0", "1", "--b", "1,1", "--q", "1.0"]);
    let re = v["value"]["re"].as_f64().unwrap();
    assert!((re - 2.0 / std::f64::consts::PI).abs() < 1e-10);
    assert!(v["est_error"].as_f64().unwrap() < 1e-8);
}

#[test]
fn gamma_one_period() {
    let v = json(&["--format", "json", "gamma", "--a", "1", "--w", "1"]);
    let s = v.to_string();
    assert!(s.contains("-0.91893853"), "{s}");
}

#[test]
fn mass_all_methods() {
    let v = json(&["--format", "json", "mass", "--b0", "1", "--b", "1,1", "--method", "all"]);
    for row in v["mass_at_one"].as_array().unwrap() {
        assert!((row["value"].as_f64().unwrap() - 0.75).abs() < 1e-9);
    }
}

#[test]
fn verify_gamma_suite_passes() {
    let o = run(&["verify", "--suite", "gamma", "--tol", "1e-7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["pass"].as_bool() == Some(true)));
}

#[test]
fn verify_csv_columns() {
    let o = run(&["--format", "csv", "verify", "--suite", "gamma"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "name,paper_ref,lhs,rhs,residual,threshold,pass");
}

#[test]
fn sample_csv_is_reproducible() {
    let args = ["--format", "csv", "--seed", "0x2a", "sample", "--law", "beta", "--b0", "1", "--b", "1", "--n", "50"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,value"));
    let vals: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(vals.len(), 50);
    assert!(vals.iter().all(|&x| x > 0.0 && x <= 1.0));
    let other = run(&["--format", "csv", "--seed", "43", "sample", "--law", "beta", "--b0", "1", "--b", "1", "--n", "50"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn deterministic_json_is_byte_identical() {
    let args = ["--format", "json", "--deterministic", "critical", "--samples", "20000"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("generated_at_unix"));
}

#[test]
fn selberg_table() {
    let v = json(&["--format", "json", "--deterministic", "selberg", "--tau", "1.5", "--q", "-1", "--samples", "100000"]);
    let row = &v["rows"][0];
    assert!((row["analytic"].as_f64().unwrap() - 19.723_479_563_785_3).abs() < 1e-8);
    assert!(row["z"].as_f64().unwrap() < 4.0);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("barnesbeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("xi.txt");
    let o = run(&["-o", path.to_str().unwrap(), "xi", "--eval", "2"]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim(), "0.5235988");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["gamma", "--a", "1", "--w", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(64));
    assert_eq!(run(&["eta", "--M", "1"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["mass", "--a", "1", "--b0", "1", "--b", "1"]).status.code(), Some(2));
}
