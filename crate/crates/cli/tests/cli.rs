use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wpalg"))
        .args(args)
        .output()
        .expect("spawn wpalg")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json stdout")
}

#[test]
fn dims_json() {
    let out = run(&["dims", "--p", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["p"], 3);
    assert_eq!(v["dim_E"], 18);
    assert_eq!(v["dim_grA"], 17);
    assert_eq!(v["dim_zhu_basic"], 8);
}

#[test]
fn quiver_dot_output() {
    let out = run(&["quiver", "--p", "2", "--which", "wp", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 4);
    let gra = run(&["quiver", "--p", "2", "--which", "gra", "--format", "dot"]);
    assert_eq!(String::from_utf8(gra.stdout).unwrap().matches("->").count(), 4);
}

#[test]
fn yoneda_dims_grow_linearly() {
    let out = run(&["yoneda", "--p", "2", "--max-degree", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let dims: Vec<u64> = v["yoneda_dims"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(dims, vec![4, 4, 6, 8, 10]);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify", "--p", "1"]).status.code(), Some(2));
    assert_eq!(run(&["quiver", "--p", "2", "--which", "gra-graded"]).status.code(), Some(2));
    assert_eq!(run(&["dims", "--p", "2", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn graded_window() {
    let out = run(&["quiver", "--p", "2", "--which", "gra-graded", "--window", "0:3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn groebner_from_ring_file() {
    let dir = std::env::temp_dir().join(format!("wpalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ring.json");
    std::fs::write(&path, r#"{"variables": ["x", "y"], "weights": [1, 1], "relations": ["x^2", "y^2"]}"#).unwrap();
    let out = run(&["groebner", "--p", "2", "--ring", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["quotient_dim"], 4);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_suites() {
    for suite in ["quivers", "yoneda", "koszul", "groebner", "tate"] {
        let out = run(&["verify", "--p", "2", "--suite", suite, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&out.stdout));
        let v = json(&out);
        assert_eq!(v["passed"], true, "{suite}");
    }
}

#[test]
fn out_file() {
    let path = std::env::temp_dir().join(format!("wpalg-out-{}.csv", std::process::id()));
    let out = run(&["dims", "--p", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().count() >= 2);
    std::fs::remove_file(&path).ok();
}
