use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn raftkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raftkit"))
        .args(args)
        .env_remove("GOG_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(code(&raftkit(&["validate", &fixture("depth_example.json")])), 0);
    let bad = raftkit(&["validate", &fixture("rank_deficient.json")]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("non_injective"), "{}", stdout(&bad));
    assert_eq!(code(&raftkit(&["validate", "/no/such/file.json"])), 2);
}

#[test]
fn garbled_input_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"vertices\": [\n  {\"id\": \"v\", \"rank\": 1.5}]}").unwrap();
    let out = raftkit(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn depth_verdicts() {
    let out = raftkit(&["depth", &fixture("depth_example.json")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verdict: Finite(2)"));
    assert_eq!(code(&raftkit(&["depth", &fixture("nonexample.json")])), 3);
    // Transport along the shear keeps producing new lines.
    let out = raftkit(&["depth", &fixture("shear_loop.json")]);
    assert_eq!(code(&out), 4, "{}", stdout(&out));
}

#[test]
fn check_reports_failing_hypothesis() {
    let out = raftkit(&["check", "--format", "json", &fixture("f2xz.json")]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failing: Vec<u64> = v["report"]["hypotheses"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|h| h["status"] == "fail")
        .map(|h| h["number"].as_u64().unwrap())
        .collect();
    assert_eq!(failing, vec![4]);
    assert_eq!(code(&raftkit(&["check", &fixture("two_planes.json")])), 0);
}

#[test]
fn crossing_on_table_graph_is_unsupported() {
    let out = raftkit(&["crossing", "--vertex", "v", &fixture("heisenberg.json")]);
    assert_eq!(code(&out), 5);
    assert!(String::from_utf8(out.stderr).unwrap().contains("table"));
    assert_eq!(
        code(&raftkit(&[
            "crossing",
            "--vertex",
            "a",
            &fixture("two_planes.json")
        ])),
        0
    );
    assert_eq!(
        code(&raftkit(&["crossing", "--vertex", "v", &fixture("f2xz.json")])),
        1
    );
}

#[test]
fn compare_against_transformed_copy() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("image.json");
    // The 0, inf, 1, 2 lines under [[2, 1], [1, 1]].
    std::fs::write(
        &path,
        r#"{"pattern": {"ambient_dim": 2, "subspaces": [[[2], [1]], [[1], [1]], [[3], [2]], [[4], [3]]]}}"#,
    )
    .unwrap();
    let out = raftkit(&[
        "compare",
        &fixture("lines_0_inf_1_2.json"),
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = raftkit(&[
        "compare",
        &fixture("lines_0_inf_1_2.json"),
        &fixture("lines_0_inf_1_3.json"),
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn compare_vertex_patterns_of_graphs() {
    let g = fixture("two_planes.json");
    let out = raftkit(&["compare", &g, &g, "--vertex-a", "a", "--vertex-b", "a"]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&raftkit(&["compare", &g, &g])), 2);
}

#[test]
fn reports_are_deterministic_and_seeded() {
    let args = [
        "compare",
        "--format",
        "json",
        &fixture("lines_0_inf_1_2.json"),
        &fixture("lines_0_inf_1_2_sheared.json"),
    ];
    let a = raftkit(&args);
    let b = raftkit(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 0x5eed);
    let seeded = Command::new(env!("CARGO_BIN_EXE_raftkit"))
        .args(args)
        .env("GOG_SEED", "7")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&seeded.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["report"]["result"]["equivalent"], true);
}

#[test]
fn reduce_writes_graph_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("reduced.json");
    let out = raftkit(&[
        "reduce",
        "--order",
        "reverse",
        "-o",
        out_path.to_str().unwrap(),
        &fixture("heisenberg.json"),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&out_path).unwrap();
    let g = raftkit_core::gog::graph_from_json(&text).unwrap();
    assert_eq!(g.vertices().len(), 1);
    assert_eq!(code(&raftkit(&["validate", out_path.to_str().unwrap()])), 0);
}

#[test]
fn ball_dot_output() {
    let out = raftkit(&["ball", "--radius", "3", "--dot", &fixture("z2_hnn.json")]);
    assert_eq!(code(&out), 0);
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph ball {"));
    assert_eq!(dot.matches(" -> ").count(), 6);
    let json = raftkit(&[
        "ball",
        "--format",
        "json",
        "--branch-cap",
        "2",
        &fixture("f2xz.json"),
    ]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["report"]["nodes"][0]["truncated"], true);
}

#[test]
fn invariants_of_pattern_and_vertex() {
    let out = raftkit(&["invariants", &fixture("lines_0_inf_1.json")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("status: rigid"));
    let out = raftkit(&["invariants", "--vertex", "v", &fixture("f2xz.json")]);
    assert!(stdout(&out).contains("status: inconclusive"), "{}", stdout(&out));
}
