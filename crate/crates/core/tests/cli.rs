use std::process::{Command, Output};

fn gentile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gentile"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = gentile(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_subcommand() {
    assert_eq!(
        stdout(&["count", "--s", "1", "--k", "2", "--n", "6"]),
        "7\n"
    );
    assert_eq!(
        stdout(&["count", "--s", "1", "--k", "inf", "--n", "100"]),
        "190569292\n"
    );
    assert_eq!(
        stdout(&["count", "--s", "2", "--k", "1", "--n", "5"]),
        "1\n"
    );
}

#[test]
fn asymptotic_subcommand() {
    assert_eq!(
        stdout(&[
            "asymptotic",
            "--s",
            "1",
            "--k",
            "inf",
            "--n",
            "100",
            "--formula",
            "eq23"
        ]),
        "1.992808933e8 eq23\n"
    );
    assert_eq!(
        stdout(&[
            "asymptotic",
            "--s",
            "1",
            "--k",
            "1",
            "--n",
            "100",
            "--formula",
            "eq21"
        ]),
        "4.527831397e5 eq21\n"
    );
}

#[test]
fn usage_errors_exit_one() {
    let cases: [&[&str]; 6] = [
        &[
            "asymptotic",
            "--s",
            "1",
            "--k",
            "inf",
            "--n",
            "100",
            "--formula",
            "eq21",
        ],
        &[
            "asymptotic",
            "--s",
            "1",
            "--k",
            "3",
            "--n",
            "100",
            "--formula",
            "eq23",
        ],
        &["count", "--s", "2.5", "--k", "1", "--n", "5"],
        &["compare", "--s", "1", "--k", "1", "--n", "7..3"],
        &["sweep", "--s", "1", "--n", "1..5"],
        &["count", "--s", "1", "--k", "zero", "--n", "5"],
    ];
    for args in cases {
        let out = gentile(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn compare_exact_column_matches_count() {
    let csv = stdout(&["compare", "--s", "2", "--k", "3", "--n", "20..60..10"]);
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let single = stdout(&["count", "--s", "2", "--k", "3", "--n", fields[0]]);
        assert_eq!(single.trim_end(), fields[1]);
    }
}

#[test]
fn compare_hardy_ramanujan_row() {
    assert_eq!(
        stdout(&["compare", "--s", "1", "--k", "inf", "--n", "100..100"]),
        "n,exact,estimate,rel_err\n100,190569292,1.992808933e8,0.045714\n"
    );
}

#[test]
fn smaller_k_converges_sooner() {
    let err = |k: &str| -> f64 {
        let csv = stdout(&["compare", "--s", "1", "--k", k, "--n", "200"]);
        csv.lines()
            .nth(1)
            .unwrap()
            .split(',')
            .nth(3)
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!(err("inf").abs() > err("1").abs());
}

#[test]
fn fermi_rel_err_within_three_percent() {
    let csv = stdout(&[
        "compare",
        "--s",
        "1",
        "--k",
        "1",
        "--n",
        "50..300",
        "--formula",
        "eq21",
    ]);
    for line in csv.lines().skip(1) {
        let rel: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(rel.abs() <= 0.03, "{line}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("gentile-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig2.csv");
    let out = gentile(&[
        "sweep",
        "--s",
        "2",
        "--k",
        "1,2,4",
        "--n",
        "10..40",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        written,
        stdout(&["sweep", "--s", "2", "--k", "1,2,4", "--n", "10..40"])
    );
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn json_output_parses() {
    let json = stdout(&[
        "sweep", "--s", "1", "--k", "2,inf", "--n", "10..12", "--format", "json",
    ]);
    let rows: serde_json::Value = serde_json::from_str(&json).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[5]["k"], "inf");
    assert_eq!(rows[5]["exact"], "77");
    assert!(rows[0]["est_eq20"].as_f64().unwrap() >= rows[0]["est_eq21"].as_f64().unwrap());
}

#[test]
fn selftest_passes() {
    let out = stdout(&["selftest"]);
    assert!(out.contains("oracle-equivalence: PASS (n≤200)\n"), "{out}");
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().all(|l| l.contains(": PASS (")));
}
