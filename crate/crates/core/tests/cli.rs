use std::process::Command;

fn driftswitch(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_driftswitch"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn solve_reference_instance() {
    let (code, out, _) = driftswitch(&["solve", "--mu", "1", "--cost", "0.04"]);
    assert_eq!(code, 0);
    let get = |k: &str| -> f64 {
        out.lines()
            .find(|l| l.split_whitespace().next() == Some(k))
            .and_then(|l| l.split_whitespace().nth(1))
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!((get("a_c") - 0.1737).abs() < 5e-4);
    assert!((get("b_c") - 0.2451).abs() < 5e-4);
    assert!((get("b_max") - 0.8494).abs() < 5e-4);
}

#[test]
fn curve_matches_the_value_command() {
    let (code, csv, _) = driftswitch(&["curve", "--mu", "1", "--cost", "0.04", "--grid", "1001"]);
    assert_eq!(code, 0);
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let rows: Vec<Vec<f64>> = reader
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 1001);
    let row = &rows[300];
    assert!((row[0] - 0.3).abs() < 1e-15);
    let (_, v, _) = driftswitch(&[
        "value",
        "--mu",
        "1",
        "--cost",
        "0.04",
        "--x",
        "0.3",
        "--drift",
        "+1",
        "--problem",
        "max",
    ]);
    assert_eq!(v.trim().parse::<f64>().unwrap(), row[3]);
    // Expulsion is never slower, confinement never faster, than drifting.
    for r in &rows {
        assert!(r[1] <= r[5] + 1e-14 && r[3] >= r[5] - 1e-14);
        assert!(r[2] <= r[6] + 1e-14 && r[4] >= r[6] - 1e-14);
    }
}

#[test]
fn exit_codes_follow_the_error_class() {
    assert_eq!(driftswitch(&["critical-cost", "--mu", "0"]).0, 2);
    assert_eq!(driftswitch(&["critical-cost"]).0, 1);
    assert_eq!(driftswitch(&["--version"]).0, 0);
    let (code, _, err) = driftswitch(&["solve", "--mu", "1", "--cost", "-0.5"]);
    assert_eq!(code, 2);
    assert!(err.contains("cost"));
}

#[test]
fn check_reports_every_entry() {
    let (code, out, _) = driftswitch(&["check", "--mu", "3", "--cost", "0.02", "--format", "csv"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().skip(1).all(|l| l.ends_with(",true")));
}
