use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

fn pmb(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pmb"));
    cmd.args(args).env_remove("PMB_THREADS");
    if let Some(t) = threads {
        cmd.env("PMB_THREADS", t);
    }
    cmd.output().expect("spawn pmb")
}

fn run_example(out: &Path) -> Vec<String> {
    let out = out.to_str().unwrap();
    vec![
        "run", "--family", "bernoulli", "--alg", "eucb", "--T", "20000", "--R", "5", "--p", "1,-1", "--seed", "7",
        "--instance-seed", "7", "--estimator", "per-run-true-mean", "--out", out,
    ]
    .into_iter()
    .map(String::from)
    .collect()
}

fn args(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

#[test]
fn run_writes_one_row_per_p() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let o = pmb(&args(&run_example(&path)), None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("instance_family,algorithm,p,T,T_tilde,clamped,"));
    assert!(lines[1].starts_with("bernoulli,EUCB,1,20000,"));
    assert!(lines[2].starts_with("bernoulli,EUCB,-1,20000,"));
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
}

#[test]
fn repeated_run_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert!(pmb(&args(&run_example(&a)), Some("1")).status.success());
    assert!(pmb(&args(&run_example(&b)), Some("4")).status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn usage_errors_exit_two() {
    for bad in [
        vec!["run", "--p", "2"],
        vec!["run", "--p", "nan"],
        vec!["run", "--family", "poisson"],
        vec!["run", "--alg", "thompson"],
        vec!["run", "--format", "xml"],
        vec!["frobnicate"],
    ] {
        let o = pmb(&bad, None);
        assert_eq!(o.status.code(), Some(2), "{bad:?}");
    }
    let o = pmb(&["run", "--T", "100", "--k", "2", "--R", "1", "--p", "1"], Some("zero"));
    assert_eq!(o.status.code(), Some(2));
    let o = pmb(&["run", "--T", "100", "--k", "2", "--R", "1", "--p", "1"], Some("0"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn runtime_errors_exit_one() {
    // UCB1 needs at least one round per arm.
    let o = pmb(&["run", "--alg", "ucb1", "--T", "10", "--k", "50", "--R", "1", "--p", "1"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    let o = pmb(&["run", "--R", "0", "--T", "100", "--p", "1"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_round_trips() {
    let common = ["run", "--family", "beta", "--k", "5", "--T", "2000", "--R", "3", "--p", "1,0,-2"];
    let csv_out = pmb(&common, None);
    let mut json_args = common.to_vec();
    json_args.extend(["--format", "json"]);
    let json_out = pmb(&json_args, None);
    assert!(csv_out.status.success() && json_out.status.success());

    let rows: Vec<serde_json::Value> = serde_json::from_slice(&json_out.stdout).unwrap();
    assert_eq!(rows.len(), 3);
    let mut reader = csv::Reader::from_reader(csv_out.stdout.as_slice());
    let header = reader.headers().unwrap().clone();
    for (record, row) in reader.records().zip(&rows) {
        let record = record.unwrap();
        let obj = row.as_object().unwrap();
        assert_eq!(obj.len(), header.len());
        for (name, field) in header.iter().zip(record.iter()) {
            let v = &obj[name];
            let rendered = match v {
                serde_json::Value::Null => String::new(),
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            match (field.parse::<f64>(), rendered.parse::<f64>()) {
                (Ok(a), Ok(b)) => assert_eq!(a, b, "{name}"),
                _ => assert_eq!(field, rendered, "{name}"),
            }
        }
    }
}

fn check_lines(args: &[&str]) -> Vec<(String, String)> {
    let o = pmb(args, None);
    assert_eq!(o.status.code(), Some(0));
    String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .map(|l| {
            let (k, v) = l.split_once('=').expect("key=value");
            (k.to_string(), v.to_string())
        })
        .collect()
}

#[test]
fn check_reports_clamped_nash_schedule() {
    let lines = check_lines(&["check", "--k", "50", "--T", "20000", "--p", "0"]);
    let get = |key: &str| lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str()).unwrap();
    assert_eq!(get("clamped"), "true");
    assert_eq!(get("explore_period"), "20000");
    assert_eq!(get("explore_period_raw"), "25457.4");
    assert_eq!(get("exploration_period.threshold"), "5622.4");
    for (k, v) in &lines {
        if k.ends_with(".passed") || k == "clamped" || k == "negative_p_side_condition" {
            assert!(v == "true" || v == "false", "{k}={v}");
        }
    }
}

#[test]
fn check_exits_zero_on_failed_checks() {
    let lines = check_lines(&["check", "--family", "uniform", "--k", "10", "--T", "1000", "--p", "-2"]);
    assert!(lines.iter().any(|(k, v)| k == "min_reward.passed" && v == "false"));
    let o = pmb(&["check", "--k", "10", "--T", "1000", "--p", "0.5", "--format", "json"], None);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc["checks"]["min_reward"]["passed"].is_boolean());
}

#[test]
fn table_smoke_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let start = Instant::now();
    let o = pmb(&["table", "--R", "2", "--out", path.to_str().unwrap()], None);
    let elapsed = start.elapsed();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    eprintln!("table --R 2 took {elapsed:?}");
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 73);
    // p-major, then algorithm, then family.
    assert!(lines[1].starts_with("bernoulli,UCB1,1,100000,"));
    assert!(lines[2].starts_with("triangular,UCB1,1,20000,"));
    assert!(lines[5].starts_with("bernoulli,NCB,1,"));
    assert!(lines[9].starts_with("bernoulli,EUCB,1,"));
    assert!(lines[13].starts_with("bernoulli,UCB1,0.5,"));
    assert!(lines[72].starts_with("uniform,EUCB,-2,20000,"));
}
