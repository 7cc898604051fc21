use std::process::{Command, Output};

use serde_json::Value;
use slq_core::decompose::verify_decomposition;
use slq_core::report::DecompositionReport;

fn slq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slq"))
        .args(args)
        .output()
        .expect("slq runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = slq(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn summand_types(v: &Value) -> Vec<String> {
    v["summands"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["type"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn rep_spin_one_at_sixth_root() {
    let v = json(&["rep", "--root", "6", "--eps", "+1", "--j", "1"]);
    assert_eq!(v["dim"], 3);
    let k = &v["k"];
    // K = diag(q^-2, 1, q^2) with q = z a primitive sixth root: q^-2 = -z, q^2 = z - 1
    assert_eq!(k[0][0], "-z");
    assert_eq!(k[1][1], "1");
    assert_eq!(k[2][2], "-1 + z");
    assert_eq!(k[0][1], "0");
}

#[test]
fn rep_rejects_large_spin() {
    let out = slq(&["rep", "--root", "3", "--j", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the maximal allowed spin"));
}

#[test]
fn rep_generic_is_rational() {
    let v = json(&["rep", "--generic", "--q0", "3/2", "--j", "0.5"]);
    assert_eq!(v["context"]["field"], "Q");
    assert_eq!(v["k"], serde_json::json!([["2/3", "0"], ["0", "3/2"]]));
    assert_eq!(v["e"], serde_json::json!([["0", "1"], ["0", "0"]]));
}

#[test]
fn decompose_examples() {
    let v = json(&["decompose", "--root", "4", "--spins", "0.5,0.5"]);
    assert_eq!(summand_types(&v), ["I4_1"]);
    assert_eq!(v["verified"], true);

    let v = json(&["decompose", "--root", "6", "--spins", "0.5,1"]);
    assert_eq!(summand_types(&v), ["I6_1"]);
    assert_eq!(v["summands"][0]["q_dim"], "0");

    let v = json(&["decompose", "--generic", "--spins", "1,1"]);
    assert_eq!(summand_types(&v), ["V(2)", "V(1)", "V(0)"]);
    assert_eq!(v["spins"], serde_json::json!(["1", "1"]));
}

#[test]
fn decompose_output_round_trips() {
    let out = slq(&["decompose", "--root", "8", "--spins", "1,1", "--basis", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let report: DecompositionReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.seed, 5);
    let d = report.rebuild().unwrap();
    assert!(verify_decomposition(&d).passed());
}

#[test]
fn decompose_is_deterministic() {
    let args = [
        "decompose",
        "--root",
        "6",
        "--spins",
        "0.5,0.5,0.5,1",
        "--basis",
        "--seed",
        "11",
    ];
    assert_eq!(slq(&args).stdout, slq(&args).stdout);
}

#[test]
fn decompose_cap_is_a_computation_error() {
    let out = slq(&["decompose", "--root", "4", "--spins", "0.5,0.5,0.5", "--cap", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn fusion_examples() {
    let v = json(&["fusion", "--generic", "--seed-rep", "0.5", "--depth", "3"]);
    assert_eq!(v["levels"][2]["kinds"], serde_json::json!({"V(3/2)": 1, "V(1/2)": 2}));

    let v = json(&["fusion", "--root", "3", "--seed-rep", "1", "--depth", "4"]);
    let level = |n: usize| {
        v["levels"][n - 1]["kinds"]
            .as_object()
            .unwrap()
            .keys()
            .cloned()
            .collect::<Vec<_>>()
    };
    assert_eq!(level(1), ["V(1)"]);
    assert_eq!(level(2), ["I6_2", "V(1)"]);
    assert_eq!(level(3), ["I6_1", "I6_2", "V(1)"]);
    assert_eq!(level(4), ["I6_1", "I6_2", "V(1)"]);
}

#[test]
fn fusion_full_matrix_mode_matches_ring() {
    let ring = json(&["fusion", "--root", "6", "--seed-rep", "0.5", "--depth", "5"]);
    let full = json(&[
        "fusion",
        "--root",
        "6",
        "--seed-rep",
        "0.5",
        "--depth",
        "5",
        "--mode",
        "full",
    ]);
    assert_eq!(ring["levels"], full["levels"]);
    let out = slq(&[
        "fusion",
        "--root",
        "6",
        "--seed-rep",
        "0.5",
        "--depth",
        "7",
        "--mode",
        "full",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bratteli_dot_for_half_at_fourth_root() {
    let out = slq(&["bratteli", "--root", "4", "--seed-rep", "0.5", "--depth", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph bratteli {"));
    for n in [1, 3] {
        assert!(dot.contains(&format!("\"{n}:V(1/2)\" -> \"{}:I4_1\";", n + 1)));
    }
    for n in [2, 4] {
        assert!(dot.contains(&format!("\"{n}:I4_1\" -> \"{}:V(1/2)\" [label=\"×4\"", n + 1)));
    }
    assert_eq!(
        dot.matches(" -> ").count() - 4,
        4,
        "four real edges plus four rank links"
    );
}

#[test]
fn bratteli_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("slq-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tower.dot");
    let out = slq(&[
        "bratteli",
        "--root",
        "6",
        "--seed-rep",
        "I6_2",
        "--depth",
        "3",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.contains("\"1:I6_2\" -> \"2:V(1)\" [label=\"×4\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn check_examples() {
    let out = slq(&["check", "--root", "8", "--suite", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));

    for args in [
        ["check", "--root", "2"].as_slice(),
        &["check", "--generic", "--q0", "1"],
    ] {
        let out = slq(args);
        assert_eq!(out.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate deformation"));
    }
}

#[test]
fn check_json_lists_named_checks() {
    let v = json(&[
        "check",
        "--generic",
        "--suite",
        "algebra",
        "--spins",
        "0.5",
        "--format",
        "json",
    ]);
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"V(1/2): [f, e] = (k - k^-1)/(q - q^-1)"));
}

#[test]
fn config_errors_exit_with_two() {
    assert_eq!(slq(&["check", "--suite", "all"]).status.code(), Some(2));
    assert_eq!(
        slq(&["check", "--root", "5", "--suite", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        slq(&["rep", "--root", "5", "--j", "0.5", "--format", "dot"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        slq(&["fusion", "--root", "5", "--seed-rep", "I3_1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        slq(&["fusion", "--root", "5", "--seed-rep", "2.5"]).status.code(),
        Some(2)
    );
}
