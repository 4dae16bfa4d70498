use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn repcorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repcorr")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = repcorr(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn permutation_rep_graph_and_k_theory() {
    let v = json(&["--group", "symmetric:3", "--rep", "perm:[(1 2),(1 2 3)]", "--task", "egraph,ktheory"]);
    let rho = &v["reps"]["rho"];
    assert_eq!(rho["egraph"]["B"], serde_json::json!([[1, 1, 1], [0, 0, 0], [1, 1, 2]]));
    assert_eq!(rho["egraph"]["sources"], serde_json::json!(["chi1"]));
    assert_eq!(rho["ktheory"]["graph"]["K0"], "Z");
    assert_eq!(rho["ktheory"]["graph"]["K1"], "0");
    assert_eq!(rho["ktheory"]["pimsner"]["K0"], "Z");
    assert_eq!(rho["ktheory"]["agree"], true);
}

#[test]
fn crossed_product_graph() {
    let v = json(&["--group", "symmetric:3", "--rep", "perm", "--task", "dgraph"]);
    assert_eq!(v["reps"]["rho"]["dgraph"]["B"], serde_json::json!([[1, 0, 1], [0, 1, 1], [1, 1, 2]]));
    assert_eq!(v["reps"]["rho"]["dgraph"]["sources"], serde_json::json!([]));
}

#[test]
fn trivial_group_table() {
    let v = json(&["--group", "cyclic:1", "--rep", "trivial", "--task", "table"]);
    let irreps = v["table"]["irreps"].as_array().unwrap();
    assert_eq!(irreps.len(), 1);
    assert_eq!(irreps[0]["values"], serde_json::json!(["1"]));
}

#[test]
fn named_reps_and_module_count() {
    let v = json(&[
        "--group",
        "symmetric:3",
        "--rep",
        "sigma=mult:[0,0,1]",
        "--rep",
        "s2=tensor(sigma,sigma)",
        "--task",
        "decompose,ktheory",
        "--convention",
        "module-count",
    ]);
    assert_eq!(v["reps"]["s2"]["mults"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["reps"]["s2"]["ktheory"]["graph"]["K0"], "Z/3");
    assert_eq!(v["reps"]["s2"]["ktheory"]["agree"], true);
}

#[test]
fn skew_and_circle() {
    let v = json(&["--skew", "lattice:1; c:regular", "--window", "3", "--task", "skew"]);
    let a = v["skew"]["skew"]["A"].as_array().unwrap();
    assert_eq!(a.len(), 7);
    assert!(a.iter().flat_map(|r| r.as_array().unwrap()).all(|x| x == 1));

    let v = json(&["--group", "cyclic:2", "--rep", "regular", "--task", "skew"]);
    assert_eq!(v["skew"]["rho"]["A"], serde_json::json!([[1, 1], [1, 1]]));

    let v = json(&["--task", "circle", "--circle", "1/2, 1/3", "--freqs", "1, -sqrt2"]);
    assert_eq!(v["circle"]["orbit_group_order"], 6);
    assert_eq!(v["circle"]["semigroup"]["generates_R"], true);
}

#[test]
fn deterministic_output() {
    let args = [
        "--group",
        "dihedral:5",
        "--rep",
        "regular",
        "--rep",
        "perm",
        "--task",
        "table,decompose,egraph,dgraph,ktheory",
        "--seed",
        "7",
    ];
    let a = repcorr(&args);
    let b = repcorr(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    for fmt in ["text", "dot"] {
        let mut with = args.to_vec();
        with.extend(["--format", fmt]);
        assert_eq!(repcorr(&with).stdout, repcorr(&with).stdout);
    }
}

#[test]
fn job_file_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("s3.job");
    let out = dir.path().join("out");
    fs::write(
        &job,
        format!(
            "# S3 permutation rep\ngroup = symmetric:3\nrep = rho=perm\ntasks = table,export\nout = {}\n",
            out.display()
        ),
    )
    .unwrap();
    let res = repcorr(&["--job", job.to_str().unwrap()]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    for f in ["report.json", "table.txt", "rho.egraph.dot", "rho.dgraph.dot"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let dot = fs::read_to_string(out.join("rho.egraph.dot")).unwrap();
    assert!(dot.starts_with("digraph G {"));
    let doc = fs::read_to_string(out.join("table.txt")).unwrap();
    assert!(doc.contains("irrep chi2 dim 2 : 2 | 0 | -1"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&repcorr(&["--group", "foo:3", "--task", "table"])), 2);
    assert_eq!(code(&repcorr(&["--group", "symmetric:3", "--task", "egraph"])), 2);
    assert_eq!(code(&repcorr(&["--group", "symmetric:3", "--rep", "x=perm:[(1 2)]", "--task", "egraph"])), 2);
    assert_eq!(code(&repcorr(&["--group", "symmetric:3", "--rep", "tensor(a,b)", "--task", "egraph"])), 2);
    assert_eq!(code(&repcorr(&["--task", "table", "--bogus"])), 2);
    // 1 on the identity class alone is not a character
    assert_eq!(code(&repcorr(&["--group", "symmetric:3", "--rep", "char:[1,0,0]", "--task", "decompose"])), 3);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain");
    fs::write(&file, "x").unwrap();
    let blocked = file.join("sub");
    assert_eq!(code(&repcorr(&["--group", "cyclic:2", "--task", "table", "--out", blocked.to_str().unwrap()])), 4);
    assert_eq!(code(&repcorr(&["--job", dir.path().join("missing.job").to_str().unwrap()])), 4);
}

#[test]
fn order_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_repcorr"))
        .args(["--group", "symmetric:4", "--task", "table"])
        .env("REPCORR_ORDER_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}
