use std::process::{Command, Output};

fn sedecim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sedecim")).args(args).env_remove("SEDECIM_JOBS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn tables_reports_all_rows() {
    let o = sedecim(&["tables"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("2A = 194, 2qB = -336  [ok]"));
    assert!(s.contains("(u,v) -> (v, 3u) mod 4  [ok]"));
    assert!(s.contains("269780589805913908506459977860802"));
    assert!(!s.contains("MISMATCH"));
}

#[test]
fn density_csv() {
    let o = sedecim(&["density", "--q", "3", "--x-max", "200", "--method", "both", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("q,p,chi,chi4,u,v,e,h,v2h,agree"));
    assert!(s.lines().any(|l| l == "3,61,1,1,13,6,-1,8,3,true"));
    assert!(s.lines().any(|l| l == "3,157,1,1,13,2,1,16,4,true"));
    assert!(s.lines().any(|l| l == "3,5,-1,NA,NA,NA,0,2,1,true"));
    assert_eq!(s.lines().count(), 1 + 21);
}

#[test]
fn density_json_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = sedecim(&["density", "--q", "3,7", "--x-max", "10000", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["q"], 3);
    assert_eq!(reports[0]["n1"], 609);
    let r16: f64 = reports[0]["ratio16"].as_str().unwrap().parse().unwrap();
    assert!((0.08..=0.17).contains(&r16));
    assert!(v["verification"].is_null());
}

#[test]
fn jobs_from_environment_do_not_change_output() {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_sedecim"))
            .args(["density", "--q", "all", "--x-max", "3000"])
            .env("SEDECIM_JOBS", jobs)
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("4");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_passes() {
    let o = sedecim(&["verify", "--q", "all", "--x-max", "3000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("checked="));
    assert!(stdout(&o).contains("mismatches=0"));
}

#[test]
fn sequence_values() {
    let o = sedecim(&["sequence", "--q", "3", "--p", "13,61,157,3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let rows: Vec<Vec<&str>> = s.lines().skip(1).map(|l| l.split(',').collect()).collect();
    for r in &rows {
        match r[1] {
            "13" => assert_eq!((r[4], r[5]), ("0", "0")),
            "61" => assert_eq!((r[4], r[5]), ("-1", "-1")),
            "157" => assert_eq!((r[4], r[5]), ("1", "1")),
            "3" => assert_eq!(r[4], "0"),
            other => panic!("unexpected row for {other}"),
        }
    }
    assert_eq!(rows.len(), 4 + 4 + 4 + 1);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(sedecim(&["density", "--q", "5"]).status.code(), Some(1));
    assert_eq!(sedecim(&["density", "--bogus"]).status.code(), Some(1));
    assert_eq!(sedecim(&["sequence", "--p", "15"]).status.code(), Some(1));
    assert_eq!(sedecim(&[]).status.code(), Some(1));
    assert_eq!(sedecim(&["--help"]).status.code(), Some(0));
}
