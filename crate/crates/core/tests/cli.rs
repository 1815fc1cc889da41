use std::path::Path;
use std::process::{Command, Output};

use sldtree::fixtures::FIXTURES;

fn sldtree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sldtree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_kb(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn every_fixture_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    for f in FIXTURES {
        let db = write_kb(dir.path(), &format!("{}.pl", f.name), f.source);
        let rename = match f.rename {
            sldtree::RenameStyle::Prime => "prime",
            sldtree::RenameStyle::Numeric => "numeric",
        };
        for format in ["ascii", "canonical", "answers-only"] {
            let args = [
                "--db", &db, "--query", f.query, "--format", format, "--rename", rename,
            ];
            let first = sldtree(&args);
            let second = sldtree(&args);
            assert_eq!(first.status.code(), Some(0), "{} {format}", f.name);
            assert_eq!(first.stdout, second.stdout, "{} {format}", f.name);
            assert!(stderr(&first).is_empty());
            let via_fixture = sldtree(&["--fixture", f.name, "--format", format]);
            assert_eq!(first.stdout, via_fixture.stdout, "{} {format}", f.name);
        }
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let animals = write_kb(
        dir.path(),
        "animals.pl",
        sldtree::fixtures::find("animals").unwrap().source,
    );
    let looping = write_kb(dir.path(), "loop.pl", "p :- p.\n");
    let broken = write_kb(dir.path(), "broken.pl", "p(a).\np(b\n");

    let o = sldtree(&["--db", &animals, "--query", "animal(unicorn)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("\nfalse.\n"));

    let o = sldtree(&["--db", &looping, "--query", "p"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("warning: search tree truncated"));
    assert!(stdout(&o).contains("..."));

    let o = sldtree(&["--db", &broken, "--query", "p(X)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("broken.pl: syntax error at 3:1"),
        "{}",
        stderr(&o)
    );

    let o = sldtree(&["--db", &animals, "--query", "animal(X"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("query: syntax error at 1:"),
        "{}",
        stderr(&o)
    );

    let o = sldtree(&["--db", &animals, "--query", "mammal(X), X < 3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("type error in goal `fox < 3`"),
        "{}",
        stderr(&o)
    );

    let o = sldtree(&["--db", &animals]);
    assert_eq!(o.status.code(), Some(2));
    let o = sldtree(&["--bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn answer_blocks() {
    let o = sldtree(&["--fixture", "romance", "--format", "answers-only"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let blocks: Vec<&str> = out.trim_end().split("\n\n").collect();
    assert_eq!(blocks.len(), 4);
    assert_eq!(blocks[1], "X = vincent\nY = marsellus");

    let o = sldtree(&["--fixture", "youngest", "--format", "answers-only"]);
    assert_eq!(stdout(&o), "Who = ben\n");
}

#[test]
fn list_fixtures() {
    let o = sldtree(&["--list-fixtures"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for name in [
        "romance",
        "animals",
        "member",
        "cut-abc",
        "youngest",
        "proof-search-k",
        "descend",
        "add",
        "append",
        "magic",
    ] {
        assert!(
            out.lines().any(|l| l.starts_with(&format!("{name}: "))),
            "{name}"
        );
    }
}

#[test]
fn width_forces_stacking() {
    let wide = sldtree(&["--fixture", "descend", "--width", "1000"]);
    let narrow = sldtree(&["--fixture", "descend", "--width", "40"]);
    assert_ne!(wide.stdout, narrow.stdout);
    let max = stdout(&wide)
        .lines()
        .map(|l| l.chars().count())
        .max()
        .unwrap();
    assert!(max > 120);
    assert!(stdout(&narrow).contains("\\___"));
}
