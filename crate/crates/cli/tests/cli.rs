use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacaranda")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn word_commands() {
    assert_eq!(stdout(&["chi", "--word", "10", "--pow", "1"]), "0010\n");
    assert_eq!(stdout(&["chi", "--word", "10", "--pow", "2"]), "0010001000000010\n");
    assert_eq!(stdout(&["proportion", "--n", "4"]), "8463/65536\n");
    assert_eq!(stdout(&["theta", "--addr", "b", "--sub", "builtin:bbab"]), "aa\nab\nbb\n");
    assert_eq!(stdout(&["source", "--addr", "ba", "--sub", "builtin:bbab"]), "a\n");
}

#[test]
fn patch_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let j = dir.path().join("j.txt");
    stdout(&["fixpoint", "--sub", "builtin:bbab", "--root", "0", "--depth", "9", "--out", path(&j)]);
    assert_eq!(stdout(&["line", "--patch", path(&j), "--level", "2"]), "0010\n");
    let unsub = stdout(&["unsub", "--patch", path(&j)]);
    assert_eq!(unsub.lines().next(), Some("depth 4"));
    assert!(stdout(&["type", "--patch", path(&j)]).starts_with("parity=even"));
    assert!(stdout(&["verify-renorm", "--sub", "builtin:bbab", "--depth", "8", "--maxlen", "4"]).starts_with("pass"));
}

#[test]
fn preimage_commands() {
    let classified = stdout(&["preimages", "--patch", "J", "--classified"]);
    assert_eq!(classified.lines().count(), 3);
    assert!(classified.contains("case=P6.5 root=0 side=b sibling=J'"));
    assert_eq!(stdout(&["preimages", "--patch", "J'", "--classified"]).lines().count(), 1);

    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    std::fs::write(&a, "depth 1\n1\n00\n").unwrap();
    let parents = stdout(&["preimages", "--patch", path(&a)]);
    assert!(parents.lines().all(|l| l.contains("side=a")));
    let table = stdout(&["complexity", "--patch", path(&a), "--max-n", "2"]);
    assert_eq!(table.lines().next(), Some("n p 3^n"));
    assert!(table.contains("\n0 1 1\n"));
}

#[test]
fn measures_and_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("nomeasure.graph");
    std::fs::write(&g, stdout(&["orbit-graph", "--example", "nomeasure", "--depth", "6"])).unwrap();
    assert_eq!(stdout(&["measure-check", "--graph", path(&g)]), "infeasible\n");
    let loop_graph = dir.path().join("loop.graph");
    std::fs::write(&loop_graph, "state x\nedge x a x\nedge x b x\n").unwrap();
    assert_eq!(stdout(&["measure-check", "--graph", path(&loop_graph)]), "feasible\nmu x 1\n");
}

#[test]
fn rendering_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let j = dir.path().join("j.txt");
    stdout(&["fixpoint", "--sub", "builtin:bbab", "--root", "0", "--depth", "5", "--out", path(&j)]);
    let mut svgs = Vec::new();
    for threads in ["1", "3"] {
        let t = dir.path().join(format!("tree{threads}.svg"));
        let d = dir.path().join(format!("disk{threads}.svg"));
        stdout(&["--threads", threads, "render-tree", "--patch", path(&j), "--out", path(&t)]);
        stdout(&["--threads", threads, "render-tiling", "--patch", path(&j), "--depth", "4", "--res", "96", "--out", path(&d)]);
        svgs.push((std::fs::read(&t).unwrap(), std::fs::read(&d).unwrap()));
    }
    assert_eq!(svgs[0], svgs[1]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["chi"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["chi", "--word", "010"]).status.code(), Some(2));
    assert_eq!(run(&["line", "--patch", "/nonexistent", "--level", "1"]).status.code(), Some(2));
    let out = run(&["verify-paper", "--fail-fast"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().next().unwrap().starts_with("PASS  1"));
    if !out.status.success() {
        assert_eq!(out.status.code(), Some(3));
        assert!(String::from_utf8_lossy(&out.stderr).contains("failed criteria"));
    }
}
