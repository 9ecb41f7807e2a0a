mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use common::*;
use ncmops::cli::run;
use ncmops::io::{fock_to_json, table_to_json, to_pretty};
use ncmops::state::MomentTable;
use ncmops::{int, FockData};
use serde_json::Value;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Out {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap()
    }
}

fn ncmops(args: &[&str]) -> Out {
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let mut full = vec!["ncmops"];
    full.extend_from_slice(args);
    let code = run(full, &mut o, &mut e);
    Out {
        code,
        stdout: String::from_utf8(o).unwrap(),
        stderr: String::from_utf8(e).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn table_file(dir: &Path, name: &str, t: &MomentTable) -> String {
    write(dir, name, &to_pretty(&table_to_json(t))).to_str().unwrap().to_string()
}

fn fock_file(dir: &Path, name: &str, d: &FockData) -> String {
    write(dir, name, &to_pretty(&fock_to_json(d))).to_str().unwrap().to_string()
}

#[test]
fn check_catalan_and_gaussian() {
    let dir = tempfile::tempdir().unwrap();
    let cat = table_file(dir.path(), "cat.json", &catalan(6));
    let out = ncmops(&["check", &cat, "-n", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.json(), serde_json::json!({ "has_mops": true }));

    let g = table_file(dir.path(), "g.json", &duplicated_gaussian());
    let out = ncmops(&["check", &g, "--degree", "1"]);
    assert_eq!(out.code, 1);
    let w = &out.json()["witness"];
    assert_eq!((w["u"].as_str(), w["w"].as_str(), w["value"].as_str()), (Some("1"), Some("2"), Some("1/1")));
}

#[test]
fn invalid_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"d": 1, "max_degree": 2, "moments": {"": "2", "1": "0", "11": "1"}}"#,
    );
    let out = ncmops(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("not a state"), "{}", out.stderr);

    let garbage = write(dir.path(), "garbage.json", "{");
    assert_eq!(ncmops(&["check", garbage.to_str().unwrap()]).code, 2);
    assert_eq!(ncmops(&["check", "/nonexistent/table.json"]).code, 2);
    assert_eq!(ncmops(&["frobnicate"]).code, 2);

    let cat = table_file(dir.path(), "cat.json", &catalan(4));
    assert_eq!(ncmops(&["check", &cat, "-n", "3"]).code, 3);
}

#[test]
fn orthogonalize_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cat = table_file(dir.path(), "cat.json", &catalan(6));
    let out = ncmops(&["orthogonalize", &cat, "-n", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = out.json();
    let rec = &v["recursion"];
    assert!(rec["C"].as_object().unwrap().values().all(|c| c == "1/1"));
    assert!(rec["B"].as_object().unwrap().values().all(|b| b == "0/1"));
    assert_eq!(v["family"]["111"], serde_json::json!({ "1": "-2/1", "111": "1/1" }));

    let out = ncmops(&["orthogonalize", &cat, "-n", "0"]);
    assert_eq!(out.json()["family"], serde_json::json!({ "": { "": "1/1" } }));

    let g = table_file(dir.path(), "g.json", &duplicated_gaussian());
    let v = ncmops(&["orthogonalize", &g, "-n", "1"]).json();
    assert!(v["recursion"].is_null());
    assert!(v["note"].as_str().unwrap().contains("no MOPS"));
    assert_eq!(v["family"]["2"], serde_json::json!({ "2": "1/1" }));
}

#[test]
fn hankel_reports() {
    let dir = tempfile::tempdir().unwrap();
    let g = table_file(dir.path(), "g.json", &duplicated_gaussian());
    let out = ncmops(&["hankel", &g, "-n", "1"]);
    assert_eq!(out.code, 4);
    assert!(out.stderr.contains("not faithful"));

    let cat = table_file(dir.path(), "cat.json", &catalan(6));
    let csv = dir.path().join("frames");
    let out = ncmops(&["hankel", &cat, "-n", "2", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = out.json();
    assert_eq!(v["relation1"]["holds"], true);
    assert_eq!(v["h"]["11"], "1/1");
    assert_eq!(std::fs::read_to_string(csv.join("frame_11.csv")).unwrap(), "1/1,0/1,1/1\n0/1,1/1,0/1\n1/1,0/1,2/1\n");
}

#[test]
fn check_agrees_with_relation1_on_faithful_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = rng(41);
    for n in 0..6 {
        let t = if n % 2 == 0 { faithful_mops_table(&mut r) } else { perturbed_table(&mut r) };
        let f = table_file(dir.path(), &format!("t{n}.json"), &t);
        let check = ncmops(&["check", &f, "-n", "2"]);
        let hankel = ncmops(&["hankel", &f, "-n", "2"]);
        assert_eq!(hankel.code, 0, "{}", hankel.stderr);
        assert_eq!(check.code == 0, hankel.json()["relation1"]["holds"] == true);
    }
}

#[test]
fn fock_and_extract() {
    let dir = tempfile::tempdir().unwrap();
    let free = fock_file(dir.path(), "free.json", &FockData::free(2, 2));
    assert_eq!(ncmops(&["fock", &free, "-n", "6"]).code, 3);
    let out = ncmops(&["fock", &free]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = out.json();
    assert_eq!(v["max_degree"], 4);
    assert_eq!(v["moments"]["1221"], "1/1");
    assert_eq!(v["moments"]["1212"], "0/1");

    let cat = table_file(dir.path(), "cat.json", &catalan(6));
    let out = ncmops(&["extract", &cat, "-K", "2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.json(), fock_to_json(&FockData::free(1, 2)));
    assert_eq!(ncmops(&["extract", &cat, "-K", "3"]).code, 3);

    let g = table_file(dir.path(), "g.json", &duplicated_gaussian());
    assert_eq!(ncmops(&["extract", &g, "-K", "1"]).code, 1);
}

#[test]
fn roundtrip_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let free = fock_file(dir.path(), "free.json", &FockData::free(2, 2));
    let out = ncmops(&["roundtrip", &free, "--verify"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.json()["agree"], true);

    let degenerate = fock_file(dir.path(), "deg.json", &degenerate_fock(&mut rng(8), 2, 2));
    assert_eq!(ncmops(&["roundtrip", &degenerate]).code, 0);

    let invalid = FockData::from_jacobi(&[int(0), int(0)], &[int(-1)]).unwrap();
    let bad = fock_file(dir.path(), "bad.json", &invalid);
    assert_eq!(ncmops(&["roundtrip", &bad]).code, 2);
}

#[test]
fn gen_examples() {
    let v = ncmops(&["gen", "catalan", "-n", "8"]).json();
    assert_eq!(v["moments"]["11111111"], "14/1");
    let v = ncmops(&["gen", "gaussian-duplicated"]).json();
    assert_eq!(v["moments"]["1212"], "3/1");
    let v = ncmops(&["gen", "jacobi", "--a", "0,0,0", "--b", "1,2", "-n", "4"]).json();
    assert_eq!(v["moments"]["1111"], "3/1");
    let v = ncmops(&["gen", "free-semicircular-d2", "--fock", "-K", "1"]).json();
    assert_eq!(v, fock_to_json(&FockData::free(2, 1)));
    assert_eq!(ncmops(&["gen", "gaussian-duplicated", "--fock"]).code, 2);
    assert_eq!(ncmops(&["gen", "catalan", "-n", "3"]).code, 2);
    assert_eq!(ncmops(&["gen", "jacobi", "--a", "0,0", "--b", "1", "-n", "4"]).code, 3);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let t = table_file(dir.path(), "t.json", &faithful_mops_table(&mut rng(77)));
    for args in [vec!["orthogonalize", &t, "-n", "2"], vec!["hankel", &t, "-n", "2"], vec!["extract", &t, "-K", "1"]] {
        let a = ncmops(&args);
        let b = ncmops(&args);
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn out_flag_and_ceiling() {
    let dir = tempfile::tempdir().unwrap();
    let cat = table_file(dir.path(), "cat.json", &catalan(6));
    let dest = dir.path().join("report.json");
    let out = ncmops(&["check", &cat, "--out", dest.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&dest).unwrap().contains("has_mops"));

    let t = table_file(dir.path(), "t.json", &faithful_mops_table(&mut rng(1)));
    assert_eq!(ncmops(&["hankel", &t, "-n", "2", "--max-dim", "6"]).code, 5);
    assert_eq!(ncmops(&["hankel", &t, "-n", "2", "--max-dim", "1"]).code, 2);
}

#[test]
fn binary_honours_the_environment_ceiling() {
    let dir = tempfile::tempdir().unwrap();
    let t = table_file(dir.path(), "t.json", &faithful_mops_table(&mut rng(2)));
    let bin = env!("CARGO_BIN_EXE_ncmops");
    let status = Command::new(bin).args(["check", &t, "-n", "2"]).env("NCMOPS_MAX_DIM", "3").output().unwrap();
    assert_eq!(status.status.code(), Some(5));
    let status = Command::new(bin).args(["check", &t, "-n", "2"]).env_remove("NCMOPS_MAX_DIM").output().unwrap();
    assert_eq!(status.status.code(), Some(0));
}
