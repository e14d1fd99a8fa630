//! The `tangles` binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

fn tangles(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tangles")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a TSV table as `(p, value)` pairs.
fn rows(o: &Output) -> Vec<(String, String)> {
    stdout(o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let (p, v) = l.split_once('\t').unwrap();
            (p.to_string(), v.to_string())
        })
        .collect()
}

fn values(o: &Output) -> Vec<String> {
    rows(o).into_iter().map(|r| r.1).collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tangles-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn golden_source() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/golden")
}

#[test]
fn four_legs() {
    let o = tangles(&["n1", "--legs", "4", "--order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(values(&o), ["1", "2", "4", "10", "29"]);
}

#[test]
fn six_legs_start_at_two() {
    let o = tangles(&["n1", "--legs", "6", "--order", "2"]);
    assert_eq!(rows(&o), [("1".into(), "0".into()), ("2".into(), "3".into())]);
}

#[test]
fn empty_tables() {
    for args in [["n1", "--legs", "4", "--order", "0"], ["nm2", "--order", "0", "--format", "tsv"]] {
        let o = tangles(&args);
        assert_eq!(o.status.code(), Some(0));
        assert!(rows(&o).is_empty(), "{}", stdout(&o));
    }
}

#[test]
fn minus_two() {
    assert_eq!(values(&tangles(&["nm2", "--order", "4"])), ["1", "-1", "1", "1"]);
    assert_eq!(values(&tangles(&["nm2", "--order", "1"])), ["1"]);
}

#[test]
fn general_first_order() {
    let o = tangles(&["general", "--order", "1", "--n", "formal"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("1\t")).unwrap();
    let cols: Vec<_> = line.split('\t').collect();
    assert_eq!(&cols[1..3], ["1", "0"]);
}

#[test]
fn general_specializations() {
    let vertical = |n: &str| -> Vec<String> {
        let o = tangles(&["general", "--order", "4", "--n", n]);
        assert_eq!(o.status.code(), Some(0));
        stdout(&o)
            .lines()
            .filter(|l| !l.starts_with('#'))
            .map(|l| l.rsplit('\t').next().unwrap().to_string())
            .collect()
    };
    assert_eq!(vertical("1"), ["1", "2", "4", "10"]);
    assert_eq!(vertical("-2"), ["1", "-1", "1", "1"]);
}

#[test]
fn exit_codes() {
    assert_eq!(tangles(&["n1", "--legs", "5"]).status.code(), Some(2));
    assert_eq!(tangles(&["n1", "--legs", "2"]).status.code(), Some(2));
    assert_eq!(tangles(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tangles(&["nm2", "--precision", "10"]).status.code(), Some(2));
    assert_eq!(tangles(&["general", "--order", "7"]).status.code(), Some(3));
    assert_eq!(tangles(&["--budget", "9", "general", "--order", "2"]).status.code(), Some(3));
    assert_eq!(tangles(&["nm2", "--order", "65"]).status.code(), Some(3));
    assert_eq!(tangles(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_is_echoed() {
    let o = tangles(&["nm2", "--order", "2", "--threads", "1"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("nm2") && err.contains("order=2") && err.contains("threads=1"), "{err}");
}

#[test]
fn json_and_tsv_agree() {
    for args in [vec!["n1", "--legs", "8", "--order", "12"], vec!["nm2", "--order", "10"]] {
        let tsv = tangles(&args);
        let mut j = args.clone();
        j.extend(["--format", "json"]);
        let json = stdout(&tangles(&j));
        let header: Vec<_> = stdout(&tsv).lines().find(|l| l.starts_with("# p")).unwrap()[2..]
            .split('\t')
            .map(str::to_string)
            .collect();
        let from_json: Vec<(String, String)> = json
            .lines()
            .filter(|l| l.starts_with('{'))
            .map(|l| {
                let v: serde_json::Value = serde_json::from_str(l).unwrap();
                (v["p"].as_str().unwrap().to_string(), v[&header[1]].as_str().unwrap().to_string())
            })
            .collect();
        assert_eq!(from_json, rows(&tsv), "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |t: &str| stdout(&tangles(&["--threads", t, "general", "--order", "3", "--n", "formal"]));
    assert_eq!(run("1"), run("2"));
}

#[test]
fn perturbed_golden_file_is_caught() {
    let dir = scratch("perturbed");
    for e in std::fs::read_dir(golden_source()).unwrap() {
        let e = e.unwrap();
        std::fs::copy(e.path(), dir.join(e.file_name())).unwrap();
    }
    let path = dir.join("tab1_G6c.tsv");
    let text = std::fs::read_to_string(&path).unwrap();
    let bumped: String = text
        .lines()
        .map(|l| match l.split_once('\t') {
            Some(("7", v)) => format!("7\t{}\n", v.parse::<u64>().unwrap() + 1),
            _ => format!("{l}\n"),
        })
        .collect();
    assert_ne!(bumped, text);
    std::fs::write(&path, bumped).unwrap();

    let o = tangles(&["verify", "--only", "tables", "--golden-dir", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let fail = out.lines().find(|l| l.starts_with("FAIL")).expect("a failing line");
    assert!(fail.contains("tab1") && fail.contains("G6c") && fail.contains("p=7"), "{fail}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 3, "{out}");

    let clean = scratch("clean");
    for e in std::fs::read_dir(golden_source()).unwrap() {
        let e = e.unwrap();
        std::fs::copy(e.path(), clean.join(e.file_name())).unwrap();
    }
    let o = tangles(&["verify", "--only", "tables", "--golden-dir", clean.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let _ = std::fs::remove_dir_all(dir);
    let _ = std::fs::remove_dir_all(clean);
}

#[test]
fn missing_golden_dir_is_a_usage_error() {
    let o = tangles(&["verify", "--golden-dir", "/nonexistent/tangles"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn asymptotic_report() {
    let o = tangles(&["verify", "--only", "asymptotics"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("n1 g_c") && out.contains("nm2 g_c"), "{out}");
    assert!(out.contains("tolerance"), "{out}");
    assert!(!out.contains("FAIL"), "{out}");
}
