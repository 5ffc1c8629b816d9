use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_functidom"))
        .args(args)
        .env_remove("FUNCTIDOM_BUDGET_NODES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
        .to_string()
}

#[test]
fn gamma_values() {
    for (args, expected) in [
        (vec!["gamma", "--cycle", "6", "--id"], "4"),
        (vec!["gamma", "--cycle", "3", "--const", "1"], "1"),
        (
            vec!["gamma", "--cycle", "12", "--tilde", "2,1,3", "--k", "4"],
            "8",
        ),
        (vec!["gamma", "--tilde", "3,2,1", "--k", "3"], "5"),
        (vec!["gamma", "--cycle", "7"], "3"),
    ] {
        let o = run(&args);
        assert!(o.status.success(), "{args:?}");
        assert_eq!(field(&stdout(&o), "gamma"), expected, "{args:?}");
    }
}

#[test]
fn gamma_json_has_labels_and_indices() {
    let o = run(&["--format", "json", "gamma", "--cycle", "5", "--id"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["gamma"], 3);
    assert_eq!(v["order"], 10);
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
    assert_eq!(v["witness_indices"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_passes_and_reports() {
    for args in [
        vec!["verify", "c5-exhaustive"],
        vec!["verify", "ex2", "--k", "1..4"],
        vec!["verify", "realization", "--a", "1..4"],
        vec!["verify", "lemma-ui", "--values", "1,5,6,10"],
        vec!["verify", "cn-id", "--n", "3..12"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(stdout(&o).contains(", 0 failed"), "{args:?}");
    }
}

#[test]
fn verify_csv_has_header_and_rows() {
    let o = run(&["--format", "csv", "verify", "ex2", "--k", "1..3"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("theorem_id,instance,claim,observed,passed,witness")
    );
    assert_eq!(lines.filter(|l| l.starts_with("ex2,")).count(), 3);
}

#[test]
fn construct_outputs_dominating_sets() {
    let o = run(&["construct", "identity", "--n", "8"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(field(&out, "witness"), "{u1, u5, v3, v7}");
    assert_eq!(field(&out, "dominating"), "yes");

    for args in [
        vec![
            "construct",
            "mod1",
            "--n",
            "7",
            "--map-random",
            "--seed",
            "1",
        ],
        vec!["construct", "max-degree", "--n", "9", "--const", "1"],
        vec!["construct", "3k2-nonperm", "--n", "8", "--const", "2"],
        vec!["construct", "ex2", "--k", "3"],
        vec!["construct", "realization", "--a", "3", "--i", "2"],
    ] {
        let o = run(&args);
        assert!(o.status.success(), "{args:?}");
        let out = stdout(&o);
        assert_eq!(field(&out, "dominating"), "yes");
        assert_eq!(field(&out, "size"), field(&out, "claimed"), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "no-such-claim"]).status.code(), Some(2));
    assert_eq!(run(&["gamma"]).status.code(), Some(2));
    assert_eq!(
        run(&["construct", "mod1", "--n", "6", "--id"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["construct", "3k2-nonperm", "--n", "8", "--id"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        run(&["gamma", "--graph", "/no/such/file"]).status.code(),
        Some(5)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_functidom"))
        .args(["gamma", "--cycle", "15", "--tilde", "2,3,1", "--k", "5"])
        .env("FUNCTIDOM_BUDGET_NODES", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn seeded_runs_are_deterministic() {
    let args = [
        "--seed",
        "42",
        "verify",
        "3k2-nonperm",
        "--n",
        "8",
        "--mode",
        "sample",
        "--count",
        "200",
    ];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[
        "--seed",
        "7",
        "construct",
        "mod1",
        "--n",
        "10",
        "--map-random",
    ]);
    let d = run(&[
        "--seed",
        "7",
        "construct",
        "mod1",
        "--n",
        "10",
        "--map-random",
    ]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn report_writes_rows_and_summary() {
    let dir = std::env::temp_dir().join(format!("functidom-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.csv");
    let o = run(&[
        "report",
        "--out",
        out.to_str().unwrap(),
        "--criteria",
        "1,7",
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.lines().any(|l| l.contains("criterion 1: ")));
    assert!(text.lines().any(|l| l.contains("criterion 7: ")));
    assert!(text
        .lines()
        .last()
        .unwrap()
        .starts_with("summary,2 of 2 criteria passed"));
    std::fs::remove_dir_all(&dir).unwrap();
}
