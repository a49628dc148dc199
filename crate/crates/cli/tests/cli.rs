use std::io::Write;
use std::process::Command;

use knotqa_cli::{run, EXIT_BUDGET, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("knotqa").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn corpus_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn tsv_rows(out: &str) -> Vec<Vec<String>> {
    out.lines().map(|l| l.split('\t').map(String::from).collect()).collect()
}

const SMALL: &str = "# a few entries\n\
    trefoil\tbraid:2:[1,1,1]\n\
    fig8\tpd:X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)\n\
    \n\
    t24\tbraid:2:[1,1,1,1]\n\
    e8_19\tbraid:3:[1,2,1,2,1,2,1,2]\n\
    hopf\tpd:X(1,3,2,4) X(3,1,4,2)\n\
    split\tpd:X(1,3,2,4) X(3,1,4,2) loops=1\n";

#[test]
fn classify_figure_eight_row() {
    let (code, out, _) = call(&["classify", "pd:X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"]);
    assert_eq!(code, EXIT_OK);
    let rows = tsv_rows(&out);
    let col = |name: &str| rows[0].iter().position(|c| c == name).unwrap();
    assert_eq!(rows[1][col("det")], "5");
    assert_eq!(rows[1][col("deg_q")], "3");
    assert_eq!(rows[1][col("verdict")], "Inconclusive/PassesBothBounds");
}

#[test]
fn classify_10_140_cites_the_refined_bound() {
    let (code, out, _) = call(&["classify", "10_140", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "NotQA/FailsRefinedBound");
    assert_eq!(v["det"], 9);
    assert_eq!(v["deg_q"], 8);
    assert!(v["theorem_cited"].as_str().unwrap().contains("det - 2"));
}

#[test]
fn qpoly_and_det() {
    let (code, out, err) = call(&["qpoly", "hopf"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(tsv_rows(&out)[1], ["hopf", "1", "2x+1-2x^-1"]);
    assert!(err.contains("nodes expanded"));
    let (_, _, err) = call(&["qpoly", "hopf", "--quiet"]);
    assert!(err.is_empty());
    let (code, out, _) = call(&["det", "8_19", "--quiet"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "8_19\t3\t3");
    let (_, out, _) = call(&["--format", "json", "qpoly", "braid:2:[1,1,1,1,1]"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["degree"], 4);
    assert!(v["stats"]["nodes_expanded"].as_u64().unwrap() >= 1);
}

#[test]
fn certify_outputs() {
    let (code, out, _) = call(&["certify", "3_1", "-q"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("det 3 at crossing"), "{out}");
    let (code, out, _) = call(&["certify", "8_19", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["certified"], false);
    assert!(v["certificate"].is_null());
    let (code, _, err) = call(&["certify", "4_1", "--max-nodes", "1"]);
    assert_eq!(code, EXIT_BUDGET, "{err}");
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(call(&[]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["classify", "no_such_knot"]).0, EXIT_USAGE);
    assert_eq!(call(&["classify", "pd:X(1,2,3)"]).0, EXIT_USAGE);
    assert_eq!(call(&["classify", "4_1", "--format", "xml"]).0, EXIT_USAGE);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("batch"));
    let missing = call(&["batch", "/nonexistent/corpus.tsv"]);
    assert_eq!(missing.0, EXIT_USAGE);
    let bad = corpus_file("ok\tbraid:2:[1]\nbad\tdt:4 6 2\n");
    let (code, _, err) = call(&["batch", bad.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn empty_batch() {
    let f = corpus_file("# nothing here\n\n");
    let path = f.path().to_str().unwrap();
    let (code, out, _) = call(&["batch", path, "--quiet"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, ""));
    let (code, out, _) = call(&["batch", path, "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap(), Value::Array(vec![]));
}

#[test]
fn tsv_and_json_agree() {
    let f = corpus_file(SMALL);
    let path = f.path().to_str().unwrap();
    let (_, tsv, _) = call(&["batch", path]);
    let (_, json, _) = call(&["batch", path, "--format", "json"]);
    let rows = tsv_rows(&tsv);
    let reports: Vec<Value> = serde_json::from_str(&json).unwrap();
    assert_eq!(rows.len() - 1, reports.len());
    assert_eq!(reports.len(), 6);
    for (row, rep) in rows[1..].iter().zip(&reports) {
        for (col, cell) in rows[0].iter().zip(row) {
            let expected = match &rep[col] {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            assert_eq!(cell, &expected, "{col}");
        }
    }
    let verdict = |name: &str| reports.iter().find(|r| r["name"] == name).unwrap()["verdict"].clone();
    assert_eq!(verdict("e8_19"), "NotQA/ExceedsQCBound");
    assert_eq!(verdict("t24"), "Inconclusive/TorusCandidate");
    assert_eq!(verdict("split"), "NotQA/DetZero");
}

#[test]
fn parallel_matches_sequential() {
    let mut text = String::new();
    for e in knotqa::corpus::bundled() {
        if e.parsed.crossing_count() <= 10 {
            text.push_str(&format!("{}\t{}\n", e.name, e.source));
        }
    }
    let f = corpus_file(&text);
    let path = f.path().to_str().unwrap();
    let (a_code, seq, _) = call(&["batch", path, "--format", "json"]);
    let (b_code, par, _) = call(&["batch", path, "--format", "json", "--parallel"]);
    assert_eq!((a_code, b_code), (EXIT_OK, EXIT_OK));
    let sorted = |s: &str| {
        let mut v: Vec<Value> = serde_json::from_str(s).unwrap();
        v.sort_by_key(|r| r["name"].as_str().unwrap().to_string());
        v
    };
    assert_eq!(sorted(&seq), sorted(&par));
}

#[test]
fn budget_marks_entry_and_keeps_others() {
    let f = corpus_file("small\tbraid:2:[1,1,1]\nbig\tbraid:4:[-1,-1,-1,2,1,1,1,2,3,-2,3]\n");
    let path = f.path().to_str().unwrap();
    let (code, out, err) = call(&["batch", path, "--max-nodes", "4", "--format", "json"]);
    assert_eq!(code, EXIT_BUDGET, "{err}");
    let v: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(v.len(), 2);
    assert_eq!(v[0]["verdict"], "Inconclusive/TorusCandidate");
    assert_eq!(v[1]["verdict"], "BudgetExceeded");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_knotqa");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["det", "4_1"]), Some(EXIT_OK));
    assert_eq!(status(&["det", "pd:X(1,1,2)"]), Some(EXIT_USAGE));
    assert_eq!(status(&["qpoly", "12n0025", "--max-nodes", "2"]), Some(EXIT_BUDGET));
    let out = Command::new(bin).args(["classify", "T2_4", "-q"]).output().unwrap();
    let line = String::from_utf8(out.stdout).unwrap();
    assert!(line.contains("Inconclusive/TorusCandidate"), "{line}");
}
