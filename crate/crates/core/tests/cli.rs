mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::*;
use signlap::io::write_graph;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_signlap")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn example_file(dir: &TempDir, w: f64) -> String {
    write(dir, &format!("example{w}.txt"), &write_graph(&example_graph(w)))
}

#[test]
fn check_psd_reports_strict_interior() {
    let dir = TempDir::new().unwrap();
    let f = example_file(&dir, -0.1);
    let o = run(&["check-psd", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PSD (strict interior), sigma=(8,0,1)"));
    let o = run(&["check-psd", &example_file(&dir, -0.25)]);
    assert!(stdout(&o).contains("PSD (boundary), sigma=(7,0,2)"));
}

#[test]
fn threshold_reports_quarter() {
    let dir = TempDir::new().unwrap();
    let o = run(&["threshold", &example_file(&dir, -0.1)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("edge (0,4): max |w-| = 0.25"));
}

#[test]
fn signature_of_edgeless_graph() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "empty.txt", "# no edges\nnodes 5\n");
    let o = run(&["signature", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sigma(L)=(0,0,5)"));
}

#[test]
fn resistance_pairs() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tree.txt", &write_graph(&example_tree()));
    let o = run(&["resistance", &f, "--pair", "0,4", "--pair", "5,8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("R(0,4)=4"), "{out}");
    assert!(out.contains("R(5,8)=6"), "{out}");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "nodes 2\n0 1 zz\n");
    let o = run(&["signature", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let missing = dir.path().join("nope.txt");
    assert_eq!(run(&["signature", missing.to_str().unwrap()]).status.code(), Some(1));

    let o = run(&["predict-clusters", &example_file(&dir, -0.1)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("single-cycle clustering"));

    let split = write(&dir, "split.txt", "nodes 4\n0 1 1\n2 3 1\n1 2 -0.5\n");
    assert_eq!(run(&["check-psd", &split]).status.code(), Some(2));
    assert_eq!(run(&["bogus", &split]).status.code(), Some(1));
}

#[test]
fn predict_clusters_on_boundary() {
    let dir = TempDir::new().unwrap();
    let o = run(&["predict-clusters", &example_file(&dir, -0.25)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("# q=5"), "{out}");
    assert!(out.contains("node,cluster,value"));
}

#[test]
fn simulate_is_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = example_file(&dir, -0.1);
    let args = ["simulate", f.as_str(), "--t-final", "1", "--seed", "42"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.contains("# seed=42"));
    assert!(out.lines().any(|l| l.starts_with("t,x0,x1")));
    let rows = out.lines().filter(|l| !l.starts_with('#') && !l.starts_with('t')).count();
    assert_eq!(rows, 101);
    let c = run(&["simulate", &f, "--t-final", "1", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn simulate_writes_files_and_reads_x0() {
    let dir = TempDir::new().unwrap();
    let f = example_file(&dir, -0.25);
    let x0 = write(&dir, "x0.txt", "1 0 0 0 0 0 0 0 0\n");
    let out = dir.path().join("traj.csv");
    let clusters = dir.path().join("clusters.txt");
    let o = run(&[
        "simulate",
        &f,
        "--x0",
        &x0,
        "--t-final",
        "40",
        "--out",
        out.to_str().unwrap(),
        "--clusters",
        clusters.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(Path::new(&out).exists());
    let report = std::fs::read_to_string(&clusters).unwrap();
    assert!(report.contains("node,cluster,value"));
    let ids: std::collections::BTreeSet<&str> = report
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("node"))
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(ids.len(), 5);
}
