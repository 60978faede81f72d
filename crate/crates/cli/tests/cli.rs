use std::fs;
use std::process::{Command, Output};

fn sigmagrp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigmagrp")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn analyze_s3_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let grp = dir.path().join("S3.grp");
    let sig = dir.path().join("sigma0.sigma");
    fs::write(&grp, "name S3\ndegree 3\ngen (1 2 3)\ngen (1 2)\n").unwrap();
    fs::write(&sig, "rest singletons\n").unwrap();
    let out = sigmagrp(&["analyze", grp.to_str().unwrap(), sig.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["pst"], true);
    assert_eq!(r["theorem_a"]["residual"]["order"], 3);
    assert_eq!(r["group"]["order"], 6);
}

#[test]
fn analyze_order_168_under_two_three_block() {
    let out = sigmagrp(&["analyze", "G168", "pi23", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["psigmat_transitive"]["holds"], true);
    assert_eq!(r["pst"], false);
}

#[test]
fn human_and_machine_reports_agree() {
    let human = stdout(&sigmagrp(&["analyze", "S4", "sigma0"]));
    let machine = json(&sigmagrp(&["analyze", "S4", "sigma0", "--json"]));
    assert!(human.contains("PST (sigma0): no"));
    assert_eq!(machine["pst"], false);
    assert!(human.contains(&format!("{} subgroups", machine["group"]["subgroups"])));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.grp");
    fs::write(&bad, "degree 3\ngen (1 2 4)\n").unwrap();
    assert_eq!(sigmagrp(&["analyze", bad.to_str().unwrap(), "sigma0"]).status.code(), Some(2));
    let overlap = dir.path().join("o.sigma");
    fs::write(&overlap, "block 2\nblock 2 5\nrest singletons\n").unwrap();
    assert_eq!(sigmagrp(&["analyze", "S3", overlap.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(sigmagrp(&["analyze", "NoSuchGroup", "sigma0"]).status.code(), Some(2));
    assert_eq!(sigmagrp(&["search", "psigmat or pst", "--builtin"]).status.code(), Some(2));
    assert_eq!(sigmagrp(&["verify", "theorem-z", "--builtin"]).status.code(), Some(2));
    assert_eq!(sigmagrp(&["verify", "theorem-a"]).status.code(), Some(2));
}

#[test]
fn empty_corpus_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = sigmagrp(&["verify", "theorem-a", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn caps_exit_3() {
    assert_eq!(sigmagrp(&["analyze", "G168", "pi23", "--max-subgroups", "10"]).status.code(), Some(3));
    assert_eq!(sigmagrp(&["analyze", "S5", "sigma0", "--max-order", "100"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s5.grp"), "degree 5\ngen (1 2 3 4 5)\ngen (1 2)\n").unwrap();
    let out = sigmagrp(&["verify", "t43", "--corpus", dir.path().to_str().unwrap(), "--max-order", "100"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn corpus_directory_with_sigma_files() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a.grp"), "name S3\ndegree 3\ngen (1 2 3)\ngen (1 2)\n").unwrap();
    fs::write(dir.path().join("b.grp"), "name C7:C3\ndegree 7\ngen (1 2 3 4 5 6 7)\ngen (2 3 5)(4 7 6)\n").unwrap();
    fs::write(dir.path().join("s0.sigma"), "rest singletons\n").unwrap();
    fs::write(dir.path().join("p.sigma"), "block 2 3\nrest one-block\n").unwrap();
    let out = sigmagrp(&["verify", "theorem-a", "--corpus", dir.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["pairs"], 4);
    assert_eq!(r["entries"][0]["subject"], "a p");
}

#[test]
fn search_examples() {
    let out = sigmagrp(&["search", "psigmat and not pst", "--builtin"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l.starts_with("G168 pi23 ")));
    let pst = stdout(&sigmagrp(&["search", "pst", "--builtin"]));
    assert!(pst.lines().any(|l| l.starts_with("S3 ")));
    assert!(pst.lines().any(|l| l.starts_with("C7:C3 ")));
    assert!(!pst.lines().any(|l| l.starts_with("S4 ") || l.starts_with("A4 ")));
    let dir = tempfile::tempdir().unwrap();
    for name in ["C2", "C6", "C2^3", "C4"] {
        let text = stdout(&sigmagrp(&["catalog", "emit", name]));
        fs::write(dir.path().join(format!("{}.grp", name)), text).unwrap();
    }
    let r = json(&sigmagrp(&["search", "sigma-nilpotent", "--corpus", dir.path().to_str().unwrap(), "--json"]));
    assert_eq!(r["hits"].as_array().unwrap().len(), r["pairs"].as_u64().unwrap() as usize);
}

#[test]
fn verify_lemmas_is_independent_of_jobs() {
    let a = sigmagrp(&["verify", "lemmas", "--builtin", "--seed", "42", "--json", "--jobs", "1"]);
    let b = sigmagrp(&["verify", "lemmas", "--builtin", "--seed", "42", "--json", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = sigmagrp(&["verify", "lemmas", "--builtin", "--seed", "43", "--json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn catalog_listing_and_emit() {
    let r = json(&sigmagrp(&["catalog", "list", "--json"]));
    assert!(r["groups"].as_array().unwrap().iter().any(|g| g[0] == "G168" && g[1] == 168));
    let emitted = stdout(&sigmagrp(&["catalog", "emit", "zpi37"]));
    assert_eq!(emitted, "block 3\nblock 7\nrest one-block\n");
    assert_eq!(sigmagrp(&["catalog", "emit", "nope"]).status.code(), Some(2));
}
