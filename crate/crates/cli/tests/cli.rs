use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_causalteam")).args(args).output().expect("binary runs")
}

fn f(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn prob_prints_exact_fraction() {
    let o = run(&["prob", &f("s3.json"), "Y=0"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "2/3\n"));
    let o = run(&["prob", &f("coin.json"), "X=heads | Y=tails"]);
    assert_eq!(stdout(&o), "3/4\n");
    let o = run(&["--json", "prob", &f("s3.json"), "Y=0"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["probability"], "2/3");
}

#[test]
fn check_exit_codes() {
    let o = run(&["check", &f("coin.json"), "Pr((X=heads | Y=tails)) >= 3/4"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "true\n"));
    // a bar directly inside Pr(...) is a condition: P(X=heads | Y=tails) = 1/2
    let o = run(&["check", &f("coin.json"), "Pr(X=heads | Y=tails) >= 3/4"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "false\n"));
    let o = run(&["check", &f("empty.json"), "bot"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "true\n"));
    let o = run(&["check", &f("empty.json"), "NE"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn parse_errors_exit_2_with_span() {
    let o = run(&["check", &f("coin.json"), "Pr(X=heads) >= "]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("at 15..15"), "{err}");
    let o = run(&["check", &f("coin.json"), "Z=1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("unknown variable `Z` at 0..1"));
    let o = run(&["intervene", &f("inc.json"), "X=7"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["check", &f("coin.json")])), 2);
    assert_eq!(code(&run(&["cneg", "top"])), 2);
}

#[test]
fn validation_errors_exit_3() {
    let o = run(&["check", &f("cyclic.json"), "X=0"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("cycle"));
    let o = run(&["check", &f("incompatible.json"), "X=0"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("violates the law for `Y`"));
    assert_eq!(code(&run(&["prob", &f("empty.json"), "X=0"])), 3);
    assert_eq!(code(&run(&["nf", "NE"])), 3);
}

#[test]
fn batch_and_trace() {
    let o = run(&["check", &f("coin.json"), "--file", &f("batch.txt")]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "true\ntrue\nfalse\n"));
    let o = run(&["check", &f("inc.json"), "--trace", "X=0 ~> Pr(Y=1) >= 1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("true\n[T] counterfactual"), "{out}");
    assert!(out.contains("(P = 1)"), "{out}");
    let o = run(&["--json", "check", &f("coin.json"), "--file", &f("batch.txt")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["results"][2]["verdict"], false);
}

#[test]
fn intervene_and_restrict_write_models() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("do.json");
    let o = run(&["intervene", &f("inc.json"), "X=0", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = run(&["prob", out.to_str().unwrap(), "Y=1"]);
    assert_eq!(stdout(&o), "1/1\n");
    let o = run(&["check", out.to_str().unwrap(), "X=2 ~> Y=3"]);
    assert_eq!(stdout(&o), "true\n");

    let o = run(&["restrict", &f("coin.json"), "X=tails"]);
    let sub = dir.path().join("sub.json");
    std::fs::write(&sub, o.stdout).unwrap();
    let o = run(&["check", sub.to_str().unwrap(), "Pr(X=tails) <= 1/2"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn normal_forms() {
    let o = run(&["nf", "X=1 ~> (Z=0 => Pr(Y=1) >= 1/2)"]);
    assert_eq!(stdout(&o), "(X=1 ~> Z=0) => X=1 ~> Pr(Y=1) >= 1/2\nrung 3\n");
    let o = run(&["--json", "nf", "Pr(X=1) >= 1/2 & (Y=0 => Pr(X=1) > 0)"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rung"], 1);
    assert_eq!(v["leaves"].as_array().unwrap().len(), 2);
    let o = run(&["nf", "Pr(X=1) >= 1/2 -> X=1 ~> Pr(Y=0) > 0", "--sig", &f("sig.json")]);
    assert!(stdout(&o).ends_with("rung 2\n"));
    let o = run(&["classify", "Pr(X=1 | Y=0) >= 1/2"]);
    assert_eq!(stdout(&o), "fragment abbreviation\nrung 1\n1\tconditional probability\tY=0 => Pr(X=1) >= 1/2\n");
    let o = run(&["classify", "NE"]);
    assert!(stdout(&o).starts_with("fragment extension\n"));
    let o = run(&["cneg", "Pr(X=1) >= 1/2", "--sig", &f("sig.json")]);
    assert_eq!(stdout(&o), "Pr(X=1 => X=0 ~> X!=0) > 1/2\n");
}

#[test]
fn sem_bridge() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    assert_eq!(code(&run(&["from-sem", &f("inc_sem.json"), "-o", out.to_str().unwrap()])), 0);
    let o = run(&["prob", out.to_str().unwrap(), "Y=3"]);
    assert_eq!(stdout(&o), "1/2\n");
    let o = run(&["to-sem", &f("inc.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ps: Vec<&str> = v["exo_dist"].as_array().unwrap().iter().map(|e| e["p"].as_str().unwrap()).collect();
    assert_eq!(ps, ["1/6", "1/3", "1/2"]);
}

#[test]
fn markov_and_rescaling() {
    let o = run(&["markov", &f("coin.json")]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "holds\n"));
    let dir = tempfile::tempdir().unwrap();
    let corr = dir.path().join("corr.json");
    std::fs::write(
        &corr,
        r#"{"signature": {"X": ["0","1"], "Y": ["0","1"]},
            "rows": [{"assignment": {"X": "0", "Y": "0"}}, {"assignment": {"X": "1", "Y": "1"}}]}"#,
    )
    .unwrap();
    let o = run(&["markov", corr.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.starts_with("violated\nX=0 Y=0\tjoint 1/2\tproduct 1/4\n"), "{out}");

    let doubled = dir.path().join("double.json");
    std::fs::write(
        &doubled,
        r#"{"signature": {"X": ["0","1"]}, "rows": [{"assignment": {"X": "0"}, "count": 4}, {"assignment": {"X": "1"}, "count": 6}]}"#,
    )
    .unwrap();
    let o = run(&["rescale-canon", doubled.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let counts: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [2, 3]);
}

#[test]
fn class_commands() {
    let o = run(&["psi", &f("class.json")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("Pr(X=0 & Y=0) == 1/3"));
    let o = run(&["define-check", &f("class.json"), "--bound", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "bound 4\nmodels checked 130\nsatisfying psi 10\nin closure or empty 10\nagrees\n"
    );
    let o = run(&["define-check", &f("class.json"), "--bound", "6", "--cap", "10"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("about 322 models"));
}

#[test]
fn csv_models() {
    let o = run(&["check", &f("rows.csv"), "Pr(Y=2) == 2/3"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "true\n"));
}

#[test]
fn suite_passes_and_is_reproducible() {
    let a = run(&["--json", "suite", "--seed", "9"]);
    assert_eq!(code(&a), 0);
    let b = run(&["--json", "suite", "--seed", "9"]);
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
        for p in v["properties"].as_array_mut().unwrap() {
            p["seconds"] = serde_json::Value::Null;
        }
        v
    };
    assert_eq!(strip(&a), strip(&b));
    let o = run(&["suite", "--seed", "1"]);
    assert!(stdout(&o).lines().skip(1).all(|l| l.starts_with("PASS ")));
}
