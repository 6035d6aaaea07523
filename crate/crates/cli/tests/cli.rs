//! End-to-end checks of the binary: exit codes, file outputs, and the
//! stable report formats.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

const COUNTEREXAMPLE: &str = "\
ograph 1
vertices 8
order o1 1 2 3 4 5 6 7 8
edge 1 2
edge 1 5
edge 1 7
edge 2 3
edge 2 4
edge 2 5
edge 2 7
edge 2 8
edge 3 4
edge 4 7
edge 4 8
edge 5 6
edge 5 7
edge 6 7
edge 7 8
";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_xcurve"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("xcurve-cli-tests");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_scratch(name: &str, content: &str) -> PathBuf {
    let path = scratch(name);
    fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn check_semi_passes_on_counterexample() {
    let f = write_scratch("ce8.og", COUNTEREXAMPLE);
    let out = run(&["check", f.to_str().unwrap(), "--kind", "semi"]);
    assert_eq!(code(&out), 0, "{:?}", out);
    assert!(String::from_utf8_lossy(&out.stdout).contains("pass"));
}

#[test]
fn check_semi_fails_on_p4_with_violators() {
    let f = write_scratch(
        "p4.og",
        "ograph 1\nvertices 4\nedge 1 2\nedge 2 3\nedge 3 4\n",
    );
    let out = run(&["check", f.to_str().unwrap(), "--kind", "semi"]);
    assert_eq!(code(&out), 1);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("violation: 1 2 3 4"), "{}", stdout);
}

#[test]
fn check_garbage_is_input_error() {
    let f = write_scratch("garbage.og", "this is not a graph\n");
    let out = run(&["check", f.to_str().unwrap(), "--kind", "semi"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn check_magical_needs_second_order() {
    let f = write_scratch("single.og", "ograph 1\nvertices 2\nedge 1 2\n");
    let out = run(&["check", f.to_str().unwrap(), "--kind", "magical"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn close_adds_the_path_edge() {
    let f = write_scratch(
        "p3.og",
        "ograph 1\nvertices 3\norder o2 1 2 3\nedge 1 2\nedge 2 3\n",
    );
    let outfile = scratch("p3.closed.og");
    let out = run(&[
        "close",
        f.to_str().unwrap(),
        "--out",
        outfile.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&outfile).unwrap();
    assert!(text.contains("edge 1 3"));
}

#[test]
fn color_semi_on_k3() {
    let f = write_scratch(
        "k3.og",
        "ograph 1\nvertices 3\nedge 1 2\nedge 1 3\nedge 2 3\n",
    );
    let outfile = scratch("k3.colors");
    let out = run(&[
        "color",
        f.to_str().unwrap(),
        "--algo",
        "semi",
        "--out",
        outfile.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("palette: 3 bound: 6"), "{}", stdout);
    let text = fs::read_to_string(&outfile).unwrap();
    assert!(text.starts_with("bound 6\n"));
    assert!(text.contains("color 1 3 1"));
}

#[test]
fn color_precondition_failure_is_exit_1() {
    let f = write_scratch(
        "p4b.og",
        "ograph 1\nvertices 4\nedge 1 2\nedge 2 3\nedge 3 4\n",
    );
    let out = run(&["color", f.to_str().unwrap(), "--algo", "semi"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn realize_counterexample_fails_without_witness() {
    let f = write_scratch("ce8b.og", COUNTEREXAMPLE);
    let outfile = scratch("ce8.curves");
    let out = run(&[
        "realize",
        f.to_str().unwrap(),
        "--out",
        outfile.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("no witness"));
}

#[test]
fn realize_k3_round_trips_and_writes_svg() {
    let f = write_scratch(
        "k3b.og",
        "ograph 1\nvertices 3\norder o2 1 2 3\nedge 1 2\nedge 1 3\nedge 2 3\n",
    );
    let curves = scratch("k3.curves");
    let svg = scratch("k3.svg");
    let out = run(&[
        "realize",
        f.to_str().unwrap(),
        "--out",
        curves.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{:?}", out);
    assert!(String::from_utf8_lossy(&out.stdout).contains("round-trip: ok"));
    let svg_text = fs::read_to_string(&svg).unwrap();
    assert_eq!(svg_text.matches("<path").count(), 3);

    // and back through disjointness
    let back = scratch("k3.back.og");
    let out2 = run(&[
        "disjointness",
        curves.to_str().unwrap(),
        "--out",
        back.to_str().unwrap(),
    ]);
    assert_eq!(code(&out2), 0);
    let text = fs::read_to_string(&back).unwrap();
    assert!(text.contains("edge 1 2") && text.contains("edge 1 3") && text.contains("edge 2 3"));
}

#[test]
fn realize_triple_ordered_split_family() {
    let f = write_scratch(
        "k3t.og",
        "ograph 1\nvertices 3\norder o2 1 2 3\norder o3 1 2 3\nedge 1 2\nedge 1 3\nedge 2 3\n",
    );
    let curves = scratch("k3t.curves");
    let out = run(&[
        "realize",
        f.to_str().unwrap(),
        "--out",
        curves.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{:?}", out);
    assert!(String::from_utf8_lossy(&out.stdout).contains("round-trip: ok"));
    let text = fs::read_to_string(&curves).unwrap();
    assert!(text.contains("kind split"));

    // triple-ordered but not double-magical: precondition failure
    let bad = write_scratch(
        "bad3.og",
        "ograph 1\nvertices 3\norder o2 1 2 3\norder o3 1 2 3\nedge 1 2\nedge 2 3\n",
    );
    let out = run(&[
        "realize",
        bad.to_str().unwrap(),
        "--out",
        scratch("bad3.curves").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn oracle_witness_none_on_counterexample() {
    let f = write_scratch("ce8c.og", COUNTEREXAMPLE);
    let out = run(&["oracle", f.to_str().unwrap(), "--stat", "witness"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "none");
}

#[test]
fn oracle_chi_on_cycle5() {
    let f = write_scratch(
        "c5.og",
        "ograph 1\nvertices 5\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 5\nedge 1 5\n",
    );
    let out = run(&["oracle", f.to_str().unwrap(), "--stat", "chi"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "chi: 3");
}

#[test]
fn oracle_witness_refuses_oversized_input() {
    let mut text = String::from("ograph 1\nvertices 10\n");
    text.push_str("edge 1 2\n");
    let f = write_scratch("big.og", &text);
    let out = run(&["oracle", f.to_str().unwrap(), "--stat", "witness"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn construct_writes_graph_and_report() {
    let outfile = scratch("constructed.og");
    let out = run(&[
        "construct",
        "--variant",
        "grounded",
        "--k",
        "2",
        "--n",
        "8",
        "--p",
        "3/10",
        "--seed",
        "7",
        "--out",
        outfile.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{:?}", out);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("check omega_le_k: pass"), "{}", stdout);
    assert!(stdout.contains("seed: 7"));
    let text = fs::read_to_string(&outfile).unwrap();
    assert!(text.starts_with("ograph 1\n"));
}

#[test]
fn construct_is_byte_deterministic() {
    let a = run(&[
        "construct",
        "--variant",
        "vertical",
        "--k",
        "2",
        "--n",
        "4",
        "--p",
        "1/4",
        "--seed",
        "9",
        "--out",
        scratch("det_a.og").to_str().unwrap(),
    ]);
    let b = run(&[
        "construct",
        "--variant",
        "vertical",
        "--k",
        "2",
        "--n",
        "4",
        "--p",
        "1/4",
        "--seed",
        "9",
        "--out",
        scratch("det_b.og").to_str().unwrap(),
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        fs::read(scratch("det_a.og")).unwrap(),
        fs::read(scratch("det_b.og")).unwrap()
    );
}

#[test]
fn verify_claims_exit_codes() {
    let ok = run(&["verify", "--claim", "matrix", "--k", "3"]);
    assert_eq!(code(&ok), 0);
    assert!(String::from_utf8_lossy(&ok.stdout).contains("max_bad_triple_free: 3"));

    let refused = run(&["verify", "--claim", "hole3d", "--k", "4"]);
    assert_eq!(code(&refused), 3);

    let ssize = run(&["verify", "--claim", "s_size", "--k", "10"]);
    assert_eq!(code(&ssize), 0);
}

#[test]
fn unknown_flags_are_rejected() {
    let out = run(&["check", "nosuch.og", "--bogus"]);
    assert_eq!(code(&out), 2);
}
