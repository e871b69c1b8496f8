use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use semigroup_heights::enumerate::{count_semigroups, EnumerationConfig};
use semigroup_heights::verify::CLAIM_IDS;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_green-heights"))
}

fn run(args: &[&str], cwd: &Path, stdin: Option<&str>) -> Output {
    let mut child = bin()
        .args(args)
        .current_dir(cwd)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn construct_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let built = run(&["construct", "u-of:fig1_s"], dir.path(), None);
    assert!(built.status.success());
    let text = String::from_utf8(built.stdout).unwrap();
    let out = run(&["analyze"], dir.path(), Some(&text));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "green-heights/1");
    assert_eq!(
        (v["H_L"].as_u64(), v["H_R"].as_u64(), v["H_J"].as_u64()),
        (Some(3), Some(7), Some(7))
    );

    let direct = run(&["analyze", "u-of:fig1_s"], dir.path(), None);
    assert_eq!(json(&direct), v);
}

#[test]
fn trivial_table_has_unit_heights() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(&["analyze", "-"], dir.path(), Some("1\n0\n")));
    for key in ["H_L", "H_R", "H_J", "H_H", "H_E"] {
        assert_eq!(v[key], 1, "{key}");
    }
}

#[test]
fn verify_order_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "verify",
            "--enumerate-order",
            "3",
            "--triples",
            "triples.csv",
            "--jobs",
            "2",
        ],
        dir.path(),
        None,
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let census = count_semigroups(&EnumerationConfig::up_to_isomorphism(3)).unwrap();
    let mut rows = csv::Reader::from_path(dir.path().join("verify-summary.csv")).unwrap();
    assert_eq!(rows.records().count(), CLAIM_IDS.len() * census);

    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("verify-report.json")).unwrap())
            .unwrap();
    assert_eq!(report["inputs"].as_array().unwrap().len(), census);
    assert!(report["violations"].as_array().unwrap().is_empty());

    let mut triples = csv::Reader::from_path(dir.path().join("triples.csv")).unwrap();
    let total: usize = triples
        .records()
        .map(|r| r.unwrap()[3].parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, census);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["analyze"], dir.path(), Some("2\n0 1\n1\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = run(&["analyze"], dir.path(), Some("2\n0 0\n0 5\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column"));

    for args in [
        &["construct", "nm:2,9"][..],
        &["analyze", "missing.mtab"],
        &["enumerate", "--order", "9"],
    ] {
        assert_eq!(
            run(args, dir.path(), None).status.code(),
            Some(2),
            "{args:?}"
        );
    }
}

#[test]
fn verify_reports_inputs_from_files_and_recipes() {
    let dir = tempfile::tempdir().unwrap();
    let stream = run(
        &["enumerate", "--order", "2", "--labelled"],
        dir.path(),
        None,
    );
    fs::write(dir.path().join("two.mtab"), &stream.stdout).unwrap();
    let out = run(
        &[
            "verify", "two.mtab", "--recipe", "asym:2", "--recipe", "sqfree:3", "--random", "5",
        ],
        dir.path(),
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("verify-report.json")).unwrap())
            .unwrap();
    let provenance: Vec<&str> = report["inputs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["input"]["provenance"].as_str().unwrap())
        .collect();
    assert_eq!(provenance.len(), 8 + 2 + 5);
    assert_eq!(provenance[0], "asym:2");
    assert!(provenance.contains(&"two.mtab#7"));
}

#[test]
fn enumerate_stream_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["enumerate", "--order", "3"], dir.path(), None);
    let text = String::from_utf8(out.stdout).unwrap();
    let tables = semigroup_heights::mtab::parse_mtab_stream(&text).unwrap();
    assert_eq!(tables.len(), 24);
    let count = run(
        &["enumerate", "--order", "3", "--count", "--fold-anti"],
        dir.path(),
        None,
    );
    assert_eq!(String::from_utf8(count.stdout).unwrap().trim(), "18");
}

#[test]
fn dot_export_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let render = |sub: &str| {
        let out = run(
            &[
                "export-dot",
                "fig2_u2",
                "--relations",
                "l,r,j,h,d",
                "--out-dir",
                sub,
            ],
            dir.path(),
            None,
        );
        assert!(out.status.success());
        ["L", "R", "J", "H", "D"].map(|k| {
            fs::read_to_string(dir.path().join(sub).join(format!("semigroup-{k}.dot"))).unwrap()
        })
    };
    let first = render("a");
    assert_eq!(first, render("b"));
    assert!(first[0].starts_with("digraph \"semigroup L\" {"));
    assert!(first[2].contains(" -> "));
    assert!(!first[4].contains(" -> "));
}
