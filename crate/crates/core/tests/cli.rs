use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stable-pieces")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn pieces_row_counts() {
    let a1 = run(&["pieces", "--type", "A1"]);
    assert!(a1.status.success());
    assert_eq!(stdout(&a1).lines().count(), 3);
    let a2 = run(&["pieces", "--type", "A2", "--automorphism", "1:2,2:1"]);
    assert_eq!(stdout(&a2).lines().count(), 13);
    let csv = run(&["pieces", "--type", "A2", "--format", "csv"]);
    let text = stdout(&csv);
    assert_eq!(text.lines().next(), Some("J,w,j_inf,dim"));
    assert_eq!(text.lines().count(), 14);
}

#[test]
fn bad_cartan_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"cartan": [[2, -1], [0, 2]]}"#).unwrap();
    let o = run(&["pieces", "--cartan", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid Cartan matrix"));
}

#[test]
fn cartan_documents_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a1a1.json");
    std::fs::write(&path, r#"[{"type": "A", "rank": 1}, {"type": "A", "rank": 1}]"#).unwrap();
    let from_file = run(&["pieces", "--cartan", path.to_str().unwrap()]);
    let from_type = run(&["pieces", "--type", "A1xA1"]);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, from_type.stdout);
}

#[test]
fn closure_and_cells() {
    let c = run(&["closure", "--type", "A1", "--piece", "J=1;w="]);
    assert!(c.status.success());
    assert_eq!(stdout(&c).lines().count(), 3);
    let r = run(&["cells", "--type", "A1", "--piece", "J=;w=1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(v["finite"], true);
}

#[test]
fn invalid_piece_and_subcommand() {
    let o = run(&["closure", "--type", "A2", "--piece", "J=1;w=1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("w is not minimal in its coset"));
    assert_eq!(run(&["explode", "--type", "A1"]).status.code(), Some(2));
    assert_eq!(run(&["pieces"]).status.code(), Some(2));
    assert_eq!(run(&["pieces", "--type", "B2", "--automorphism", "1:2,2:1"]).status.code(), Some(2));
    assert_eq!(run(&["pieces", "--type", "A1", "--format", "dot"]).status.code(), Some(2));
}

#[test]
fn hasse_is_dot_with_upward_edges() {
    let o = run(&["hasse", "--type", "A1"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("[label=\"J:{1}|w:e\"]"));
    assert!(dot.contains("n2 -> n1;"));
}

#[test]
fn order_modes() {
    let above = run(&["order", "--type", "A2", "--piece", "J=1;w=2"]);
    assert!(above.status.success());
    assert!(stdout(&above).lines().all(|w| w != "e" && w != "1"));
    let rel = run(&["order", "--type", "A1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&rel.stdout).unwrap();
    // A1 pieces form a chain of three, so there are three strict relations.
    assert_eq!(v.as_array().unwrap().len(), 3);
    let b = run(&["order", "--type", "A1", "--bruhat"]);
    assert_eq!(stdout(&b), "e\t11\n1\t01\n");
}

#[test]
fn verify_small_ranks_passes() {
    let o = run(&["verify", "--max-rank", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 8 * 7);
    assert!(!text.contains("FAIL"));
    let one = run(&["verify", "--type", "A1xA1xA1", "--automorphism", "1:2,2:3,3:1", "--check", "twisted-order"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(run(&["verify", "--check", "nonsense"]).status.code(), Some(2));
}
