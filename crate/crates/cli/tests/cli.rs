use std::process::{Command, Output};

fn torsmut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsmut")).args(args).output().expect("binary runs")
}

fn torsmut_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsmut"))
        .args(args)
        .env("TORSMUT_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn theorem_c_report_a2() {
    let o = torsmut(&["--family", "a2", "verify", "theorem-c"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "10 class pairs (8 nested), 5 covers, 0 violations\n");
}

#[test]
fn lattice_dot_has_pentagon_shape() {
    let o = torsmut(&["--family", "a2", "tors", "lattice", "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("rankdir=BT"));
    assert_eq!(dot.lines().filter(|l| l.trim_start().starts_with('n') && !l.contains("->")).count(), 5);
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 5);
}

#[test]
fn lattice_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("out.dot");
    let json = dir.path().join("out.json");
    let o = torsmut(&[
        "--family",
        "a3",
        "tors",
        "lattice",
        "--dot",
        dot.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert_eq!(std::fs::read_to_string(&dot).unwrap().matches(" -> ").count(), 21);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 14);
    assert_eq!(v["covers"].as_array().unwrap().len(), 21);
    assert_eq!(v["ambient"].as_array().unwrap().len(), 6);
}

#[test]
fn kronecker_demo_reports_the_skip() {
    let o = torsmut(&["--family", "kronecker", "--bound", "7", "kronecker-demo", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("irreducible: yes"), "{s}");
    assert!(s.contains("pair-skip t₃→t₁ wide: no"), "{s}");
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(torsmut(&["--family", "bogus", "ind", "list"]).status.code(), Some(2));
    assert_eq!(torsmut(&["--family", "a2", "--p", "4", "ind", "list"]).status.code(), Some(2));
    // a bounded Kronecker slice has no lattice
    assert_eq!(torsmut(&["--family", "kronecker", "--bound", "5", "tors", "lattice"]).status.code(), Some(2));
    assert_eq!(torsmut(&["--family", "a2", "mutations", "--from", "9"]).status.code(), Some(2));
    // at the top of the lattice there is no right mutation
    let o = torsmut(&["--family", "a2", "silting", "mutate", "--at", "0", "--dir", "right"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("two-term range"));
}

#[test]
fn algebra_json_input() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("a2.json");
    std::fs::write(&good, r#"{ "p": 2, "vertices": ["1","2"], "arrows": [{"name":"a","from":"1","to":"2"}], "relations": [] }"#)
        .unwrap();
    let path = good.to_str().unwrap();
    let o = torsmut(&["--algebra", path, "algebra", "check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("algebra ok: p = 2, 2 vertices, 1 arrows, 0 relations, dimension 3"));
    let from_file = torsmut(&["--algebra", path, "verify", "theorem-c"]);
    let builtin = torsmut(&["--family", "a2", "verify", "theorem-c"]);
    assert_eq!(from_file.stdout, builtin.stdout);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{ "p": 2, "vertices": ["1","2"], "arrows": [{"name":"a","from":"1","to":"2"}], "relations": [["a","b"]] }"#)
        .unwrap();
    assert_eq!(torsmut(&["--algebra", bad.to_str().unwrap(), "algebra", "check"]).status.code(), Some(2));
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(torsmut(&["--algebra", garbage.to_str().unwrap(), "ind", "list"]).status.code(), Some(2));
}

#[test]
fn silting_list_and_mutate() {
    let o = torsmut(&["--family", "a2", "silting", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 5);
    assert!(entries.iter().all(|e| e["summands"].as_array().unwrap().len() == 2));
    let top = &entries[4]["summands"];
    assert_eq!(top[0]["g"], serde_json::json!([0, 1]));
    assert_eq!(top[1]["g"], serde_json::json!([1, 0]));

    let o = torsmut(&["--family", "a2", "silting", "mutate", "--at", "0", "--dir", "left"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let gs: Vec<&serde_json::Value> = v["summands"].as_array().unwrap().iter().map(|s| &s["g"]).collect();
    assert_eq!(gs, vec![&serde_json::json!([1, -1]), &serde_json::json!([1, 0])]);
    assert_eq!(v["summands"][0]["d"][0][0]["a"], 1);
}

#[test]
fn text_reports() {
    let o = torsmut(&["--family", "a2", "ind", "list"]);
    assert!(stdout(&o).ends_with("3 indecomposables up to total dimension 8 (complete)\n"));
    let o = torsmut(&["--family", "a2", "mutations", "--from", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("maximal mutation top: 4 (unique: yes)"));
    let o = torsmut(&["--family", "a3", "verify", "triples"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "68 nested pairs, 0 round-trip failures, 0 invariant failures\n");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    for args in [
        &["--family", "a3", "tors", "lattice", "--json"][..],
        &["--family", "nakayama3-2", "silting", "list"][..],
        &["--family", "a3", "--format", "json", "verify", "theorem-c"][..],
        &["--family", "kronecker", "--bound", "7", "--format", "json", "ind", "list"][..],
    ] {
        let one = torsmut_threads(args, "1");
        let four = torsmut_threads(args, "4");
        let again = torsmut_threads(args, "4");
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(four.stdout, again.stdout, "{args:?}");
    }
}
