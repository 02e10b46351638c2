use std::path::Path;
use std::process::{Command, Output};

use srg_core::graphs::families::{paley, petersen};
use srg_core::graphs::{write_graph6, write_json_graph, Graph};

fn srg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srg")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn params_of_the_target() {
    let o = srg(&["params", "76", "21", "2", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("multiplicities: 1, 56, 19"), "{s}");
    assert!(s.contains("cosines θ=-7: (1, -1/3, 1/9)"), "{s}");
    assert!(s.contains("verdict: FEASIBLE"));
}

#[test]
fn params_exit_codes() {
    assert_eq!(srg(&["params", "76", "21", "2", "8"]).status.code(), Some(1));
    assert_eq!(srg(&["params", "10", "12", "0", "1"]).status.code(), Some(2));
    // passes the identity, fails integrality
    assert_eq!(srg(&["params", "7", "3", "0", "2"]).status.code(), Some(1));
    assert_eq!(srg(&["params", "76", "21"]).status.code(), Some(2));
}

#[test]
fn params_json_is_deterministic() {
    let a = srg(&["params", "76", "21", "2", "7", "--json"]);
    let b = srg(&["params", "76", "21", "2", "7", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["spectrum"]["mult_minus"], 19);
    assert_eq!(v["cosines"][1]["w1"], serde_json::json!({"num": "-1", "den": "3"}));
}

#[test]
fn check_graph_formats_and_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = write(dir.path(), "petersen.g6", &(write_graph6(&petersen()).unwrap() + "\n"));
    let o = srg(&["check-graph", &g6]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("θ = -2: Gram matrix PSD, rank 4, multiplicity 4"));

    let js = write(dir.path(), "petersen.json", &write_json_graph(&petersen()));
    assert_eq!(srg(&["check-graph", &js, "--theta", "1"]).status.code(), Some(0));

    let path = write(dir.path(), "path.g6", &write_graph6(&Graph::from_edges(3, &[(0, 1), (1, 2)])).unwrap());
    assert_eq!(srg(&["check-graph", &path]).status.code(), Some(1));

    let bad = write(dir.path(), "bad.g6", "Bww");
    assert_eq!(srg(&["check-graph", &bad]).status.code(), Some(2));
    assert_eq!(srg(&["check-graph", "/nonexistent/graph.g6"]).status.code(), Some(2));
    // 3 is not an eigenvalue of the Petersen graph's nontrivial spectrum
    assert_eq!(srg(&["check-graph", &g6, "--theta", "3"]).status.code(), Some(2));
}

#[test]
fn local_structure_of_paley13() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "p13.g6", &write_graph6(&paley(13)).unwrap());
    let o = srg(&["local", &f, "--vertex", "0", "--witness", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cycles"][0].as_array().unwrap().len(), 6);
    assert_eq!(v["total_marks"], 3);
    assert_eq!(srg(&["local", &f, "--vertex", "0", "--witness", "1"]).status.code(), Some(2));
    let pet = write(dir.path(), "pet.g6", &write_graph6(&petersen()).unwrap());
    assert_eq!(srg(&["local", &pet, "--vertex", "0"]).status.code(), Some(1));
}

#[test]
fn replay_stages() {
    let o = srg(&["replay76"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("final verdict: NONEXISTENT"));
    assert_eq!(srg(&["replay76", "--stage", "lemma-three"]).status.code(), Some(0));
    assert_eq!(srg(&["replay76", "--stage", "lemma-cliques"]).status.code(), Some(1));
    let o = srg(&["replay76", "--stage", "no-such-stage"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("agreement-code-search"));
}

#[test]
fn roots_of_d4() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "d4.json", "[[2,-1,0,0],[-1,2,-1,-1],[0,-1,2,0],[0,-1,0,2]]");
    let o = srg(&["roots", "--gram", &f]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("24 vectors of norm 2"), "{s}");
    assert!(s.contains("D4 (24 roots)"), "{s}");
    let half = write(dir.path(), "half.json", r#"[["2", "-1/1"], [-1, "4/2"]]"#);
    assert!(stdout(&srg(&["roots", "--gram", &half])).contains("A2 (6 roots)"));
    let indefinite = write(dir.path(), "bad.json", "[[1,2],[2,1]]");
    assert_eq!(srg(&["roots", "--gram", &indefinite]).status.code(), Some(2));
}

#[test]
fn codes_verdicts_and_budget() {
    let o = srg(&["codes", "2", "7", "3", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0111111"));
    assert_eq!(srg(&["codes", "5", "7", "3", "1"]).status.code(), Some(1));
    assert_eq!(srg(&["codes", "5", "7", "3", "1", "--budget", "3"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_srg"))
        .args(["codes", "5", "7", "3", "1"])
        .env("SRG_WITNESS_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = srg(&["replay76", "--json", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["final_verdict"], "NONEXISTENT");
}
