use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_graphstar"));
    c.env("GRAPHSTAR_THREADS", "2");
    c
}

fn graph_file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn strip_timestamp(mut v: serde_json::Value) -> serde_json::Value {
    match &mut v {
        serde_json::Value::Object(m) => {
            m.remove("timestamp");
        }
        serde_json::Value::Array(a) => {
            for x in a.iter_mut() {
                if let serde_json::Value::Object(m) = x {
                    m.remove("timestamp");
                }
            }
        }
        _ => {}
    }
    v
}

#[test]
fn words_examples() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = graph_file(dir.path(), "p3.g", "n 3\ne 0 1\ne 1 2\n");
    let k2 = graph_file(dir.path(), "k2.g", "# complete\nn 2\ne 0 1\n");
    let o = run(&["words", "nf", "--graph", p3.to_str().unwrap(), "--word", "1,0,2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0,1,2");
    let o = run(&["words", "reduce", "--graph", k2.to_str().unwrap(), "--word", "0,0"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = run(&["words", "nclen", "--graph", p3.to_str().unwrap(), "--word", "2,1,0", "--vertex", "0"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = run(&["words", "closure", "--graph", p3.to_str().unwrap(), "--word", "0,2"]);
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), vec!["()", "0", "0,2", "2"]);
    let o = run(&["words", "stdform", "--graph", p3.to_str().unwrap(), "--word", "0,2,1,0", "--vertex", "0"]);
    assert!(stdout(&o).contains("v0=0"), "{}", stdout(&o));
}

#[test]
fn verify_ucp_example_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = graph_file(dir.path(), "k2.g", "n 2\ne 0 1\n");
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let o = run(&["verify", "ucp", "--graph", k2.to_str().unwrap(), "--seed", "7", "--trials", "50", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let ra: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&a).unwrap()).unwrap();
    let rb: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&b).unwrap()).unwrap();
    assert!(ra["timestamp"].is_u64());
    assert_eq!(ra["suite"], "ucp");
    assert_eq!(ra["passes"], 50);
    assert_eq!(strip_timestamp(ra), strip_timestamp(rb));
}

#[test]
fn thread_count_does_not_change_reports() {
    let one = bin().env("GRAPHSTAR_THREADS", "1").args(["verify", "lemmas", "--seed", "3", "--trials", "20"]).output().unwrap();
    let four = bin().env("GRAPHSTAR_THREADS", "4").args(["verify", "lemmas", "--seed", "3", "--trials", "20"]).output().unwrap();
    let a: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&four.stdout).unwrap();
    assert_eq!(strip_timestamp(a), strip_timestamp(b));
}

#[test]
fn failing_suite_exits_one() {
    let o = run(&["verify", "schwarz", "--seed", "1", "--trials", "20"]);
    assert_eq!(o.status.code(), Some(1));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r["failures"].as_u64().unwrap() > 0);
    assert!(!r["artifacts"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["words", "nf", "--graph", "/definitely/missing.g", "--word", "0"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = graph_file(dir.path(), "bad.g", "n 2\ne 0 0\n");
    let o = run(&["words", "nf", "--graph", bad.to_str().unwrap(), "--word", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let g = graph_file(dir.path(), "e2.g", "n 2\n");
    assert_eq!(run(&["words", "nf", "--graph", g.to_str().unwrap(), "--word", "0,5"]).status.code(), Some(2));
    assert_eq!(run(&["dilate", "halmos", "--matrix", "2"]).status.code(), Some(2));
    assert_eq!(bin().env("GRAPHSTAR_THREADS", "many").args(["fock", "moments"]).output().unwrap().status.code(), Some(2));
}

#[test]
fn dilation_commands() {
    let o = run(&["dilate", "egervary", "--matrix", "0.5,0.1;0,0.3", "--degree", "4"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["unitary"]["rows"], 10);
    let dir = tempfile::tempdir().unwrap();
    let k2 = graph_file(dir.path(), "k2.g", "n 2\ne 0 1\n");
    let o = run(&["dilate", "vn", "--graph", k2.to_str().unwrap(), "--poly", "1:0,1;-0.5:1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["dilate", "gram", "--trials", "10", "--seed", "2"]);
    assert!(o.status.success());
}

#[test]
fn groups_commands() {
    let dir = tempfile::tempdir().unwrap();
    let e2 = graph_file(dir.path(), "e2.g", "n 2\n");
    let o = run(&["groups", "ball", "--graph", e2.to_str().unwrap(), "--groups", "cyclic:2,cyclic:2", "--radius", "3"]);
    assert_eq!(stdout(&o).lines().count(), 7);
    let o = run(&["groups", "pd", "--graph", e2.to_str().unwrap(), "--groups", "cyclic:3,sym:3", "--trials", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn report_with_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let o = run(&["report", "--suite", "gram,egervary,moments", "--trials", "5", "--csv", csv.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("suite,trials"));
}
