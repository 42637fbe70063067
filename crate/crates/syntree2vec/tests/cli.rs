mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::{write, FIG1};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syntree2vec"))
        .args(args)
        .output()
        .unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let corpus = write(d, "c.conllu", FIG1);
    let (graph, walks, emb) = (d.join("g"), d.join("w"), d.join("e"));

    let o = run(&["build", p(&corpus), "-o", p(&graph)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("nodes: 7\nedges: 8\n"));

    let o = run(&["walk", p(&graph), "-o", p(&walks), "-r", "3", "-l", "5", "-q", "0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(&walks).unwrap().lines().count(), 21);

    let o = run(&["train", p(&walks), "-o", p(&emb), "--graph", p(&graph), "-d", "6", "--epochs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("epoch 2:"));
    assert!(std::fs::read_to_string(&emb).unwrap().starts_with("7 6\n"));

    let o = run(&["query", p(&emb), "kicked", "-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 3);
    assert!(!out.contains("kicked"));

    let o = run(&["stats", p(&graph), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"nodes\": 7"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let empty = write(d, "empty", "");
    let o = run(&["build", p(&empty), "-o", p(&d.join("g"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty corpus"));

    let corpus = write(d, "c.conllu", FIG1);
    let graph = d.join("g");
    assert_eq!(run(&["build", p(&corpus), "-o", p(&graph)]).status.code(), Some(0));

    let o = run(&["walk", p(&graph), "-o", p(&d.join("w")), "-p", "0"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let o = run(&["walk", p(&graph), "-o", p(&d.join("w")), "--mode", "deepwalk"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let o = run(&["stats", p(&corpus)]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["stats", p(&d.join("missing"))]);
    assert_eq!(o.status.code(), Some(2));

    let emb = write(d, "e", "1 1\nx 1\n");
    let o = run(&["query", p(&emb), "y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not in vocabulary"));
}

#[test]
fn command_line_overrides_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let corpus = write(d, "c.conllu", FIG1);
    let graph = d.join("g");
    assert_eq!(run(&["build", p(&corpus), "-o", p(&graph)]).status.code(), Some(0));
    let config = write(d, "run.toml", "mode = \"uniform-walk\"\nq = 0.25\nwalk_length = 4\n");

    let o = run(&[
        "--config", p(&config), "--show-config", "walk", p(&graph), "-o", p(&d.join("w")),
        "--mode", "node2vec-baseline",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let shown = stderr(&o);
    assert!(shown.contains("mode = \"node2vec-baseline\""), "{shown}");
    assert!(shown.contains("q = 0.25"));
    let walks = std::fs::read_to_string(d.join("w")).unwrap();
    assert!(walks.lines().all(|l| l.split(' ').count() == 4));

    let bad = write(d, "bad.toml", "walkz = 3\n");
    let o = run(&["--config", p(&bad), "stats", p(&graph)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn repeated_walk_command_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let corpus = write(d, "c.conllu", FIG1);
    let graph = d.join("g");
    run(&["build", p(&corpus), "-o", p(&graph)]);
    for name in ["w1", "w2"] {
        let o = run(&["walk", p(&graph), "-o", p(&d.join(name)), "--seed", "11"]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(d.join("w1")).unwrap(), std::fs::read(d.join("w2")).unwrap());
}
