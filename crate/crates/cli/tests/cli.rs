use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const IRIS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/iris.csv");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_labelnoise"))
        .args(args)
        .output()
        .expect("run binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn iris_negatives() -> [&'static str; 4] {
    ["--negative", "Iris-versicolor", "--negative", "Iris-virginica"]
}

#[test]
fn verify_examples_passes() {
    let o = run(&["verify", "--scope", "examples"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    for n in 1..=5 {
        assert!(out.contains(&format!("== Example {n} (")), "{out}");
    }
    assert_eq!(out.matches(": PASS\n").count(), 5);
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_theorems_passes_as_csv() {
    let o = run(&[
        "verify",
        "--scope",
        "theorems",
        "--instances",
        "20",
        "--format",
        "csv",
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("section,check,computed,expected,tolerance,verdict\n"));
    assert!(out.lines().skip(1).all(|l| l.ends_with(",PASS")));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["verify", "--scope", "bogus"],
        vec!["frobnicate"],
        vec![],
        vec!["iris", "--trials", "0"],
        vec!["iris", "--trials", "many"],
        vec!["iris", "--noise", "gaussian:0.1"],
        vec!["iris", "--noise", "uniform:0.7"],
        vec!["iris", "--algorithms", "svm"],
        vec!["iris", "--format", "json"],
        vec!["verify", "--noise", "uniform:0.1"],
        vec!["analyze", "--positive", "Iris-setosa"],
        vec!["analyze", "--data", IRIS],
        vec!["iris", "--config", "/nonexistent/labelnoise.conf"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_0() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
}

#[test]
fn iris_csv_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let records = dir.path().join("trials.csv");
    let o = run(&[
        "iris",
        "--trials",
        "1",
        "--seed",
        "42",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
        "--records",
        records.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "noise,algorithm,mean,std,trials");
    // 6 noise rows x 5 algorithms
    assert_eq!(lines.len(), 31);
    let trials = fs::read_to_string(&records).unwrap();
    assert!(trials.starts_with("noise,algorithm,trial,seed,accuracy,error\n"));
    assert_eq!(trials.lines().count(), 31);
}

#[test]
fn iris_default_table_layout() {
    let o = run(&["iris", "--trials", "1", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("hinge risk (LP)"));
    assert!(!out.contains("SVM"));
    assert!(out.contains("Iris-setosa = +1"));
    for row in [
        "none",
        "uniform:0.1",
        "uniform:0.2",
        "uniform:0.3",
        "quadrant:0.15,0.2,0.25,0.3",
        "quadrant:0.3,0.25,0.2,0.15",
    ] {
        assert!(out.lines().any(|l| l.starts_with(&format!("{row} "))), "{row}");
    }
}

#[test]
fn unwritable_output_exits_1() {
    let o = run(&[
        "iris",
        "--trials",
        "1",
        "--algorithms",
        "fld",
        "--out",
        "/nonexistent-dir/r.csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cannot write"));
}

#[test]
fn analyze_reproduces_iris() {
    let common = [
        "--trials",
        "2",
        "--seed",
        "11",
        "--format",
        "csv",
        "--noise",
        "uniform:0.2",
    ];
    let iris = run(&[&["iris"][..], &common].concat());
    let mut args = vec!["analyze", "--data", IRIS, "--positive", "Iris-setosa"];
    args.extend(iris_negatives());
    args.extend(common);
    let analyze = run(&args);
    assert_eq!(analyze.status.code(), Some(0), "{}", stderr(&analyze));
    assert_eq!(iris.stdout, analyze.stdout);
}

#[test]
fn analyze_non_binary_column_names_third_value() {
    let o = run(&["analyze", "--data", IRIS, "--positive", "Iris-setosa", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(
        err.contains("Iris-virginica") || err.contains("Iris-versicolor"),
        "{err}"
    );
}

#[test]
fn analyze_data_errors_exit_1_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "a,b,label\n1,2,yes\n3,oops,no\n").unwrap();
    let o = run(&[
        "analyze",
        "--data",
        bad.to_str().unwrap(),
        "--label-column",
        "label",
        "--positive",
        "yes",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("oops") && err.contains('3'), "{err}");

    let o = run(&["analyze", "--data", "/nonexistent.csv", "--positive", "yes"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&[
        "analyze",
        "--data",
        IRIS,
        "--label-column",
        "species",
        "--positive",
        "Iris-setosa",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("species"));
}

#[test]
fn analyze_binary_csv_and_cccn_label() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.csv");
    let mut text = String::from("x,y,label\n");
    for i in 0..40 {
        let x = i as f64 / 10.0;
        let label = if x > 2.0 { "yes" } else { "no" };
        text.push_str(&format!("{x},{},{label}\n", (i % 7) as f64));
    }
    fs::write(&data, text).unwrap();
    let o = run(&[
        "analyze",
        "--data",
        data.to_str().unwrap(),
        "--label-column",
        "label",
        "--positive",
        "yes",
        "--noise",
        "cccn:0.1,0.3",
        "--trials",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("\"cccn:0.1,0.3\",zero-one,"), "{out}");
    assert_eq!(out.lines().count(), 6);
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("run.conf");
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let conf = write_config(
        dir.path(),
        "# sweep\ntrials = 2\nseed = 5\nformat = csv\nalgorithms = fld,least-squares\nnoise = uniform:0.1\nnoise = cccn:0.2,0.1\n",
    );
    let from_file = run(&["iris", "--config", &conf]);
    assert_eq!(from_file.status.code(), Some(0), "{}", stderr(&from_file));
    let explicit = run(&[
        "iris",
        "--trials",
        "2",
        "--seed",
        "5",
        "--format",
        "csv",
        "--algorithms",
        "fld,least-squares",
        "--noise",
        "uniform:0.1",
        "--noise",
        "cccn:0.2,0.1",
    ]);
    assert_eq!(from_file.stdout, explicit.stdout);
    let out = stdout(&from_file);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().nth(1).unwrap().ends_with(",2"));

    // flags beat the file
    let overridden = run(&[
        "iris", "--config", &conf, "--trials", "1", "--noise", "none", "--format", "table",
    ]);
    assert_eq!(overridden.status.code(), Some(0));
    let out = stdout(&overridden);
    assert!(out.contains("over 1 trial(s), seed 5"));
    assert!(out.contains("FLD") && !out.contains("uniform:0.1"));
}

#[test]
fn config_file_errors_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    for body in ["trials = lots\n", "colour = red\n", "seed\n", "format = json\n"] {
        let conf = write_config(dir.path(), body);
        let o = run(&["iris", "--config", &conf]);
        assert_eq!(o.status.code(), Some(2), "{body}: {}", stderr(&o));
    }
}

#[test]
fn same_seed_same_bytes() {
    let a = run(&["verify", "--scope", "all", "--seed", "7"]);
    let b = run(&["verify", "--scope", "all", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["iris", "--trials", "2", "--seed", "4", "--algorithms", "zero-one"]);
    let d = run(&["iris", "--trials", "2", "--seed", "4", "--algorithms", "zero-one"]);
    assert_eq!(c.stdout, d.stdout);
    let e = run(&["iris", "--trials", "2", "--seed", "5", "--algorithms", "zero-one"]);
    assert_ne!(c.stdout, e.stdout);
}
