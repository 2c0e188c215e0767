use std::path::PathBuf;
use std::process::{Command, Output};

fn aversion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aversion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const GOLDEN: [&str; 6] = ["--ul", "0.55", "--uh", "0.62", "--alpha", "0.60"];

fn with_golden<'a>(cmd: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend_from_slice(&GOLDEN);
    v.extend_from_slice(extra);
    v
}

/// CSV text into (header, rows of cells).
fn table(s: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = s.lines();
    let head = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    (head, rows)
}

fn column(s: &str, name: &str) -> Vec<f64> {
    let (head, rows) = table(s);
    let i = head.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("aversion-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn golden_solve() {
    let o = aversion(&with_golden("solve", &[]));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let gamma = column(&out, "gamma")[0];
    let acc = column(&out, "accuracy")[0];
    assert!((gamma - 0.0148).abs() < 5e-4);
    assert!((acc - 0.58537).abs() < 1e-4);
    assert!(acc < 0.60);
    // configuration echo goes to stderr for CSV
    assert!(stderr(&o).contains("# alpha = 0.6"));
}

#[test]
fn inadmissible_parameters_exit_2() {
    let o = aversion(&["solve", "--ul", "0.55", "--uh", "0.62", "--alpha", "0.55"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("alpha must exceed upsilon_L"));
    let o = aversion(&["solve", "--ul", "0.55", "--uh", "0.62"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing --alpha"));
    let o = aversion(&["solve", "--ul", "1.2", "--uh", "0.62", "--alpha", "0.6"]);
    assert_eq!(o.status.code(), Some(2));
    let o = aversion(&with_golden("solve", &["--format", "xml"]));
    assert_eq!(o.status.code(), Some(2));
    let o = aversion(&with_golden("solve", &["--nonsense"]));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_and_csv_agree() {
    let csv = stdout(&aversion(&with_golden("solve", &[])));
    let o = aversion(&with_golden("solve", &["--format", "json"]));
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let sol = &v["solution"];
    let (head, rows) = table(&csv);
    for (k, cell) in head.iter().zip(&rows[0]) {
        let x: f64 = cell.parse().unwrap();
        assert_eq!(sol[k].as_f64().unwrap(), x, "{k}");
    }
    assert_eq!(v["config"]["command"], "solve");
    // JSON carries the configuration itself, so stderr stays quiet
    assert!(stderr(&o).is_empty());
}

#[test]
fn nine_significant_digits() {
    let out = stdout(&aversion(&with_golden("solve", &[])));
    let (_, rows) = table(&out);
    for cell in &rows[0] {
        let digits: String = cell
            .split(['e', 'E'])
            .next()
            .unwrap()
            .chars()
            .filter(char::is_ascii_digit)
            .collect();
        assert!(digits.trim_start_matches('0').len() <= 9, "{cell}");
    }
}

#[test]
fn alpha_sweep_is_monotone_and_crosses_zero_margin() {
    let o = aversion(&[
        "sweep", "--ul", "0.55", "--uh", "0.62", "--axis", "alpha", "--from", "0.551", "--to",
        "0.619", "--points", "50",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("alpha,gamma,"));
    let gamma = column(&out, "gamma");
    assert_eq!(gamma.len(), 50);
    assert!(gamma.windows(2).all(|w| w[1] > w[0]));
    assert!(column(&out, "dgamma_dalpha").iter().all(|&d| d > 0.0));
    let margin = column(&out, "accuracy_margin");
    assert!(margin[0] > 0.0);
    assert!(*margin.last().unwrap() < 0.0);
}

#[test]
fn sweep_skips_inadmissible_points_and_rejects_empty_ranges() {
    let o = aversion(&[
        "sweep", "--ul", "0.55", "--uh", "0.62", "--from", "0.5", "--to", "0.63", "--points", "14",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("skipped"));
    assert!(column(&stdout(&o), "alpha").iter().all(|&a| a > 0.55 && a < 0.62));

    let zero = aversion(&[
        "sweep", "--ul", "0.55", "--uh", "0.62", "--from", "0.56", "--to", "0.6", "--points", "0",
    ]);
    assert_eq!(zero.status.code(), Some(2));
    let backwards = aversion(&[
        "sweep", "--ul", "0.55", "--uh", "0.62", "--from", "0.6", "--to", "0.56",
    ]);
    assert_eq!(backwards.status.code(), Some(2));
    let nothing = aversion(&[
        "sweep", "--ul", "0.55", "--uh", "0.62", "--from", "0.7", "--to", "0.8",
    ]);
    assert_eq!(nothing.status.code(), Some(2));
}

#[test]
fn upsilon_high_sweep_names_its_column() {
    let o = aversion(&[
        "sweep", "--ul", "0.55", "--alpha", "0.6", "--axis", "upsilon_H", "--from", "0.62", "--to",
        "0.9", "--points", "8", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows[0]["dgamma_dupsilon_H"].is_number());
    assert_eq!(v["skipped"], 0);
}

#[test]
fn simulate_is_deterministic() {
    let args = with_golden("simulate", &["--n", "300000", "--seed", "11"]);
    let a = aversion(&args);
    let b = aversion(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["n_draws"], 300000);
    assert_eq!(v["seed"], 11);
    let acc = &v["accuracy"];
    let z = (acc["value"].as_f64().unwrap() - acc["model"].as_f64().unwrap()).abs()
        / acc["se"].as_f64().unwrap();
    assert!(z < 3.0, "z = {z}");
    let c = aversion(&with_golden("simulate", &["--n", "300000", "--seed", "12"]));
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn simulate_first_best_never_overrides() {
    let o = aversion(&with_golden("simulate", &["--n", "50000", "--gamma", "1"]));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["low_overrides"], 0);
    assert_eq!(v["gamma"], 1.0);
    let o = aversion(&with_golden("simulate", &["--gamma", "1.5"]));
    assert_eq!(o.status.code(), Some(2));
    let o = aversion(&with_golden("simulate", &["--n", "0"]));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_csv_is_the_joint_table() {
    let o = aversion(&with_golden("simulate", &["--n", "40000", "--format", "csv"]));
    let out = stdout(&o);
    let counts = column(&out, "count");
    assert_eq!(counts.len(), 32);
    assert_eq!(counts.iter().sum::<f64>(), 40000.0);
}

#[test]
fn verify_passes_and_prints_one_line_per_claim() {
    let o = aversion(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.starts_with("PASS ")).count() > 40);
    assert!(!out.contains("FAIL "));
}

#[test]
fn verify_catches_an_injected_fault() {
    let o = aversion(&["verify", "--inject-fault", "g-sign"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("FAIL G(0) > 0")).expect("named failure");
    assert!(line.contains("upsilon_L="));
    assert!(stderr(&o).contains("G(0) > 0"));
}

#[test]
fn verify_dense_grid_covers_a_thousand_points() {
    let o = aversion(&["verify", "--grid", "dense", "--format", "json", "--n", "50000"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["grid_points"].as_u64().unwrap() >= 1000);
    assert_eq!(v["all_passed"], true);
    let claims = v["claims"].as_array().unwrap();
    let g0 = claims.iter().find(|c| c["claim"] == "G(0) > 0").unwrap();
    assert!(g0["evaluated"].as_u64().unwrap() >= 1000);
}

#[test]
fn config_file_precedence() {
    let cfg = tmp("golden.conf");
    std::fs::write(&cfg, "# golden point, wrong alpha\nul = 0.55\nuh = 0.62\nalpha = 0.58\nformat = json\n")
        .unwrap();
    let path = cfg.to_str().unwrap();
    let from_file = aversion(&["solve", "--config", path]);
    assert_eq!(from_file.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    assert_eq!(v["solution"]["alpha"], 0.58);
    let overridden = aversion(&["solve", "--config", path, "--alpha", "0.6", "--format", "csv"]);
    let out = stdout(&overridden);
    assert_eq!(column(&out, "alpha")[0], 0.6);
    assert!((column(&out, "gamma")[0] - 0.0148).abs() < 5e-4);

    let bad = tmp("bad.conf");
    std::fs::write(&bad, "ul = 0.55\nbeta = 3\n").unwrap();
    let o = aversion(&["solve", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown key 'beta'"));
    let o = aversion(&["solve", "--config", "/nonexistent/aversion.conf"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_flag_writes_a_file() {
    let path = tmp("solve.csv");
    let o = aversion(&with_golden("solve", &["--out", path.to_str().unwrap()]));
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("upsilon_L,upsilon_H,alpha,gamma"));
}
