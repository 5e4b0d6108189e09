use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        let ws = Workspace {
            dir: TempDir::new().unwrap(),
        };
        ws.file("triangle.json", r#"{"vertices":3,"edges":[[0,1],[1,2],[2,0]]}"#);
        ws.file("k3.json", r#"{"n":3,"a":[1,1,1],"B":[[0,1,1],[1,0,1],[1,1,0]]}"#);
        ws.file("p3.json", r#"{"vertices":3,"edges":[[0,1],[1,2]]}"#);
        ws.file("edge2.json", r#"{"vertices":2,"edges":[[0,1]],"labels":[0,1]}"#);
        ws
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, body).unwrap();
        path
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_hominv"))
            .current_dir(self.dir.path())
            .args(args)
            .output()
            .unwrap()
    }
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn hom_of_triangle_into_k3() {
    let ws = Workspace::new();
    let out = ws.run(&["hom", "triangle.json", "k3.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "6\n");
    let out = ws.run(&["--format", "json", "h", "triangle.json", "k3.json"]);
    assert_eq!(stdout(&out), "{\"h\":\"2\"}\n");
}

#[test]
fn gentrans_of_path() {
    let ws = Workspace::new();
    let out = ws.run(&["gentrans", "p3.json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("false\n"));
    assert!(text.contains("orbits {0,2} {1}"));
}

#[test]
fn example1_anchor() {
    let ws = Workspace::new();
    let out = ws.run(&["verify", "example1", "--n", "3", "--y", "-2", "triangle.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("-54 = -54\n"));
}

#[test]
fn degenerate_y_is_an_input_error() {
    let ws = Workspace::new();
    let out = ws.run(&["verify", "example1", "--n", "3", "--y", "1", "triangle.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn diagnostics_name_the_field() {
    let ws = Workspace::new();
    ws.file("bad.json", r#"{"vertices":2,"edges":[[0,1],[0,5]]}"#);
    let out = ws.run(&["hom", "bad.json", "k3.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("edges[1]"), "{}", stderr(&out));

    ws.file("asym.json", r#"{"n":2,"a":[1,1],"B":[[0,1],[2,0]]}"#);
    let out = ws.run(&["aut", "asym.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("B[0][1]") || stderr(&out).contains("B[1][0]"), "{}", stderr(&out));

    let out = ws.run(&["hom", "missing.json", "k3.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flags_are_rejected() {
    let ws = Workspace::new();
    let out = ws.run(&["hom", "--frobnicate", "triangle.json", "k3.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn twinreduce_output_reparses() {
    let ws = Workspace::new();
    let out = ws.run(&["twinreduce", "p3.json"]);
    assert_eq!(out.status.code(), Some(0));
    let reduced = stdout(&out);
    assert_eq!(reduced, "{\"n\":2,\"a\":[\"2\",\"1\"],\"B\":[[\"0\",\"1\"],[\"1\",\"0\"]]}\n");
    ws.file("reduced.json", &reduced);
    let again = ws.run(&["twinreduce", "reduced.json"]);
    assert_eq!(stdout(&again), reduced);
}

#[test]
fn lemmas_need_twin_free_targets() {
    let ws = Workspace::new();
    let out = ws.run(&["verify", "lemma1", "p3.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("twin"));
}

#[test]
fn lemma_checks_on_reduced_path_find_witnesses() {
    let ws = Workspace::new();
    ws.file("p3r.json", r#"{"n":2,"a":["2","1"],"B":[["0","1"],["1","0"]]}"#);
    let out = ws.run(&["verify", "lemma1", "p3r.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("transitive false"));
    assert!(stdout(&out).contains("h(F1) h(F2)"));
    let out = ws.run(&["--format", "json", "verify", "lemma2", "p3r.json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "consistent");
    assert!(report["witness"].is_object());
}

#[test]
fn theorem1_and_witness() {
    let ws = Workspace::new();
    let out = ws.run(&["verify", "theorem1", "--pairs", "50", "k3.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict consistent"));
    let out = ws.run(&["witness", "p3.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("h(F)  = 2\nh(F') = 16/9"), "{}", stdout(&out));
    let out = ws.run(&["witness", "k3.json"]);
    assert!(stdout(&out).starts_with("none"));
}

#[test]
fn tensor_tutte_and_counts() {
    let ws = Workspace::new();
    let out = ws.run(&["tensor", "--k", "2", "edge2.json", "k3.json"]);
    assert_eq!(stdout(&out).lines().nth(1), Some("[0,1] 1"));
    let out = ws.run(&["tensor", "--k", "1", "edge2.json", "k3.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&ws.run(&["tutte", "triangle.json"])), "x^2 + x + y\n");
    assert_eq!(stdout(&ws.run(&["chromatic", "--n", "3", "triangle.json"])), "6\n");
    assert_eq!(stdout(&ws.run(&["flow", "--n", "3", "triangle.json"])), "2\n");
    assert_eq!(stdout(&ws.run(&["orbits", "--k", "2", "k3.json"])), "2\n");
    let out = ws.run(&["ranktest", "--k", "2", "k3.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("rank 2\norbits 2\n"));
}

#[test]
fn tensions_warn_on_asymmetric_sets() {
    let ws = Workspace::new();
    let out = ws.run(&["tensions", "--m", "3", "--set", "1,2", "triangle.json"]);
    assert_eq!(stdout(&out), "2\n");
    assert!(stderr(&out).is_empty());
    let out = ws.run(&["tensions", "--m", "3", "--set", "1", "triangle.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("warning"));
    let out = ws.run(&["tensions", "--m", "3", "--set", "1,x", "triangle.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn survey_is_deterministic() {
    let ws = Workspace::new();
    let args = ["--format", "json", "survey", "--max-n", "3", "--pairs", "20"];
    let first = ws.run(&args);
    let second = ws.run(&[&args[..], &["--jobs", "2"]].concat());
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&second));
    let rows: Vec<serde_json::Value> = stdout(&first).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r["consistent"] == true));
    let out = ws.run(&["survey", "--max-n", "7"]);
    assert_eq!(out.status.code(), Some(3));
}
