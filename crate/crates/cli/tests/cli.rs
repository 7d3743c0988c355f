use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lmc::format::{parse_synthesis, write_matrix};
use lmc::{BinMatrix, Permutation};
use tempfile::TempDir;

const CYCLE3: &str = "3\n010\n001\n100\n";
const CYCLE3_SYNTH: &str = "3\n1 3\n3 1\n1 3\n1 2\n2 1\n1 2\n";

fn lmc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lmc"))
        .args(args)
        .env_remove("LMC_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_optimal_cycle() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "m.txt", CYCLE3);
    let syn = file(&dir, "s.txt", CYCLE3_SYNTH);
    let o = lmc(&["verify", s(&m), s(&syn)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("match: yes"));
    assert!(out.contains("bound: 6"));
    assert!(out.contains("verdict: OPTIMAL"));
}

#[test]
fn verify_identity_empty_synthesis() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "m.txt", "4\n1000\n0100\n0010\n0001\n");
    let syn = file(&dir, "s.txt", "4\n");
    let o = lmc(&["verify", s(&m), s(&syn)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bound: 0"));
    assert!(stdout(&o).contains("OPTIMAL"));
}

#[test]
fn verify_padded_synthesis_has_gap() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "m.txt", CYCLE3);
    let syn = file(&dir, "s.txt", &format!("{CYCLE3_SYNTH}2 3\n2 3\n"));
    let o = lmc(&["verify", s(&m), s(&syn)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("match: yes"));
    assert!(out.contains("gates: 8"));
    assert!(out.contains("verdict: GAP 2"));
}

#[test]
fn verify_wrong_synthesis_is_mismatch() {
    // One extra gate changes the matrix.
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "m.txt", CYCLE3);
    let syn = file(&dir, "s.txt", &format!("{CYCLE3_SYNTH}2 3\n"));
    let o = lmc(&["verify", s(&m), s(&syn)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn verify_dimension_mismatch_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "m.txt", CYCLE3);
    let syn = file(&dir, "s.txt", "4\n1 2\n");
    let o = lmc(&["verify", s(&m), s(&syn)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("dimension mismatch"));
}

#[test]
fn parse_errors_exit_2_with_line_numbers() {
    let dir = TempDir::new().unwrap();
    let empty = file(&dir, "empty.txt", "");
    assert_eq!(lmc(&["bound", s(&empty)]).status.code(), Some(2));

    let short = file(&dir, "short.txt", "3\n010\n01\n100\n");
    let o = lmc(&["connectivity", s(&short)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let bad = file(&dir, "bad.txt", "2\n1 1\n");
    assert_eq!(lmc(&["classify", s(&bad)]).status.code(), Some(2));

    let missing = dir.path().join("nope.txt");
    assert_eq!(lmc(&["cperfect", s(&missing)]).status.code(), Some(2));
}

#[test]
fn comment_preamble_accepted() {
    let dir = TempDir::new().unwrap();
    let m = file(
        &dir,
        "m.txt",
        &format!("# a 3-cycle\n# second comment\n{CYCLE3}"),
    );
    let o = lmc(&["bound", s(&m)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bound    6"));
}

#[test]
fn unknown_flags_rejected() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "m.txt", CYCLE3);
    assert_eq!(
        lmc(&["bound", s(&m), "--frobnicate"]).status.code(),
        Some(2)
    );
    assert_eq!(
        lmc(&["census", "--n", "3", "--colour"]).status.code(),
        Some(2)
    );
    assert_eq!(lmc(&["census", "--n", "6"]).status.code(), Some(2));
    assert_eq!(lmc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bound_json_has_stable_fields() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "m.txt", CYCLE3);
    let a = stdout(&lmc(&["bound", s(&m), "--json"]));
    let b = stdout(&lmc(&["bound", s(&m), "--json"]));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    for (key, want) in [
        ("ell", 2),
        ("m", 2),
        ("c", 2),
        ("z", 3),
        ("z_inv", 3),
        ("bound", 6),
        ("depth_lb", 6),
    ] {
        assert_eq!(v[key], want, "{key}");
    }
    let keys: Vec<&str> = [
        "\"ell\"",
        "\"m\"",
        "\"c\"",
        "\"z\"",
        "\"z_inv\"",
        "\"bound\"",
        "\"depth_lb\"",
    ]
    .into_iter()
    .collect();
    let positions: Vec<usize> = keys.iter().map(|k| a.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn bound_flags_change_the_bound() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "m.txt", "4\n1001\n1111\n1011\n1100\n");
    let weak: serde_json::Value =
        serde_json::from_str(&stdout(&lmc(&["bound", s(&m), "--json"]))).unwrap();
    let strong: serde_json::Value = serde_json::from_str(&stdout(&lmc(&[
        "bound",
        s(&m),
        "--json",
        "--transpose",
        "stronger",
    ])))
    .unwrap();
    assert_eq!(weak["bound"], 4);
    assert_eq!(strong["bound"], 5);
    let floor = stdout(&lmc(&["bound", s(&m), "--no-floor"]));
    assert_eq!(floor, stdout(&lmc(&["bound", s(&m)])));
}

#[test]
fn connectivity_example() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "m.txt", "5\n00100\n01010\n10000\n00001\n01000\n");
    let o = lmc(&["connectivity", s(&m)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("v=2 e=4\n"), "{out}");
    assert!(out.contains("vertex: {1,3},{2,4,5}"), "{out}");
}

#[test]
fn cperfect_and_rivers() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "m.txt", "3\n110\n011\n101\n");
    let out = stdout(&lmc(&["rivers", s(&m)]));
    assert_eq!(out, "count: 2\n123\n231\n");

    // Rivers are defined for any 0/1 matrix; c_perfect needs an inverse.
    assert_eq!(lmc(&["cperfect", s(&m)]).status.code(), Some(2));
    let inv = file(&dir, "c.txt", CYCLE3);
    let c = stdout(&lmc(&["cperfect", s(&inv)]));
    assert!(c.contains("emp: 0"));
    assert!(c.contains("middle_lower_bound:"));

    let big = BinMatrix::identity(9).unwrap();
    let m9 = file(&dir, "m9.txt", &write_matrix(&big));
    assert_eq!(lmc(&["rivers", s(&m9)]).status.code(), Some(2));
}

#[test]
fn classify_reports_pattern_and_shapes() {
    let dir = TempDir::new().unwrap();
    let syn = file(&dir, "s.txt", CYCLE3_SYNTH);
    let out = stdout(&lmc(&["classify", s(&syn)]));
    assert!(out.contains("pattern: LMCLMC"));
    assert!(out.contains("counts: L=2 M=2 C=2 N=0"));
    assert!(out.contains("L: spanning_tree=true"));
}

#[test]
fn synth_perm_stdout_is_a_synthesis() {
    let o = lmc(&["synth-perm", "(1 3 5)(2 4)"]);
    assert_eq!(o.status.code(), Some(0));
    let syn = parse_synthesis(&stdout(&o)).unwrap();
    assert_eq!(syn.len(), 9);
    let sigma = Permutation::from_cycle_notation("(1 3 5)(2 4)", None).unwrap();
    assert_eq!(syn.replay(), sigma.to_matrix().unwrap());
    assert!(stdout(&o).contains("# gates: 9"));
}

#[test]
fn synth_perm_writes_file_for_every_construction() {
    let dir = TempDir::new().unwrap();
    for row in ["row1", "row2", "row3", "row4", "row5"] {
        let out = dir.path().join(format!("{row}.txt"));
        let o = lmc(&[
            "synth-perm",
            "(1 2 3 4)",
            "--construction",
            row,
            "--n",
            "6",
            "--out",
            s(&out),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("gates: 9"));
        assert!(stdout(&o).contains("L=3 M=3 C=3"));
        let syn = parse_synthesis(&fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(syn.n(), 6);
    }
    assert_eq!(
        lmc(&["synth-perm", "(1 2)", "--construction", "row9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(lmc(&["synth-perm", "(1 2 1)"]).status.code(), Some(2));
}

#[test]
fn linkable_exit_codes() {
    let dir = TempDir::new().unwrap();
    let chain = file(&dir, "chain.txt", "3\n110\n011\n001\n");
    let o = lmc(&["linkable", s(&chain)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let body = out.strip_prefix("LINKABLE\n").unwrap();
    let witness = parse_synthesis(body).unwrap();
    assert_eq!(witness.len(), 2);

    let cycle = file(&dir, "cycle.txt", CYCLE3);
    let o = lmc(&["linkable", s(&cycle)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("NOT LINKABLE ("));

    let split = file(&dir, "id.txt", "2\n10\n01\n");
    assert_eq!(lmc(&["linkable", s(&split)]).status.code(), Some(2));
}

#[test]
fn census_n3_writes_reports_deterministically() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert_eq!(
        lmc(&["census", "--n", "3", "--out", s(&a)]).status.code(),
        Some(0)
    );
    assert_eq!(
        lmc(&["census", "--n", "3", "--out", s(&b), "--threads", "2"])
            .status
            .code(),
        Some(0)
    );
    for name in [
        "sizes_n3.csv",
        "confusion_n3.csv",
        "heatmap_n3.csv",
        "metrics_n3.json",
    ] {
        let x = fs::read(a.join(name)).unwrap();
        let y = fs::read(b.join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
    let sizes = fs::read_to_string(a.join("sizes_n3.csv")).unwrap();
    assert!(sizes.starts_with("size,count\n0,1\n1,6\n"));
    let confusion = fs::read_to_string(a.join("confusion_n3.csv")).unwrap();
    assert!(confusion.starts_with("bound\\size,0,1,"));
    let metrics: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(a.join("metrics_n3.json")).unwrap()).unwrap();
    assert_eq!(metrics["metrics"]["total"], 168);
    assert_eq!(metrics["metrics"]["exact"], 1.0);
    assert_eq!(metrics["unsound_cells"], 0);
    assert!(metrics["definitions"].as_str().unwrap().contains("sigma"));
}

#[test]
fn census_cache_from_env_dir() {
    let dir = TempDir::new().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_lmc"))
            .args(["census", "--n", "3"])
            .env("LMC_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    let cache = dir.path().join("sizes_n3.lmc1");
    let bytes = fs::read(&cache).unwrap();
    assert_eq!(&bytes[..5], b"LMC1\x03");
    assert_eq!(bytes.len(), 5 + 512);
    let second = run();
    assert_eq!(first.stdout, second.stdout);

    fs::write(&cache, b"junk").unwrap();
    assert_eq!(run().status.code(), Some(2));
}

#[test]
fn census_explicit_cache_dimension_checked() {
    let dir = TempDir::new().unwrap();
    let cache = dir.path().join("t.lmc1");
    assert_eq!(
        lmc(&["census", "--n", "2", "--cache", s(&cache)])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        lmc(&["census", "--n", "3", "--cache", s(&cache)])
            .status
            .code(),
        Some(2)
    );
}
