use std::process::{Command, Output};

use serde_json::Value;

fn skewrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewrank")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = skewrank(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (v, out.status.code().unwrap())
}

#[test]
fn rank_of_figure_shapes() {
    for (shape, want) in [("6,5,5,3/2,1,1", 3), ("1", 1), ("5,4,3,2/2,1,1", 3)] {
        let (v, code) = json(&["rank", shape]);
        assert_eq!(code, 0);
        for key in ["diagonal", "code", "jt", "min_strips", "zrank"] {
            assert_eq!(v[key], want, "{shape} {key}");
        }
        assert_eq!(v["verdict"], "AGREE");
    }
    let text = String::from_utf8(skewrank(&["rank", "6,5,5,3/2,1,1"]).stdout).unwrap();
    assert!(text.contains("verdict    AGREE"));
}

#[test]
fn reduced_code_of_figure_three() {
    let (v, _) = json(&["code", "5,4,3,2/2,1,1"]);
    assert_eq!(v["top"], "101101000");
    assert_eq!(v["bottom"], "001010101");
    assert_eq!(v["rank"], 3);
}

#[test]
fn jacobi_trudi_classification() {
    let (v, _) = json(&["jt", "6,5,5,3/2,1,1"]);
    assert_eq!(v["entries"][3], serde_json::json!(["0", "1", "h1", "h3"]));
    assert_eq!(v["jrank"], 3);
}

#[test]
fn determinants() {
    let (v, code) = json(&["det", "cauchy", "--a", "3,1", "--b", "0,2"]);
    assert_eq!(code, 0);
    assert_eq!((v["det"].as_str(), v["omega"].as_u64(), v["verdict"].as_str()), (Some("-1"), Some(1), Some("OK")));

    let (v, code) = json(&["det", "factorial", "--a", "4,2", "--b", "1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["det"], "1/12");
    assert_eq!(v["omega"], 0);
    assert_eq!(v["via_double_schur"], "1/12");

    let (v, code) = json(&["det", "binomial", "--a", "4,2", "--b", "1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["det"], "1/6");

    let (v, code) = json(&["det", "cauchy", "--a", "-1/2,-3", "--b", "-4,-7/2"]);
    assert_eq!(code, 0);
    assert_eq!(v["omega"], 0);
}

#[test]
fn validation_errors_exit_with_two() {
    let (v, code) = json(&["det", "cauchy", "--a", "1", "--b", "2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "AntiDiagonalViolation");
    assert_eq!(skewrank(&["rank", "2,3"]).status.code(), Some(2));
    assert_eq!(skewrank(&["rank"]).status.code(), Some(2));
    assert_eq!(skewrank(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(skewrank(&["hg", "3,2/1", "--cut", "RR"]).status.code(), Some(2));
    let (v, code) = json(&["rank", "9,9/1", "--max-cells", "10"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "SearchBoundExceeded");
}

#[test]
fn outside_decomposition_commands() {
    let (v, code) = json(&["hg", "6,5,5,3/2,1,1", "--cut", "RRRRRRRR"]);
    assert_eq!(code, 0);
    assert_eq!(v["grank"], 3);
    assert_eq!(v["identity"], true);
    assert_eq!(v["matrix"][0][3], 0);
    assert_eq!(v["matrix"][1][3], 1);

    let (v, code) = json(&["grank", "3,2/1"]);
    assert_eq!(code, 0);
    assert_eq!(v["granks"].as_array().unwrap().len(), 8);
    assert_eq!(v["mismatches"], 0);

    let (v, _) = json(&["pq", "5,4,3,2/2,1,1"]);
    assert_eq!(v["P_minus_Q"], serde_json::json!([-3, 0, 2]));
    assert_eq!(v["Q_minus_P"], serde_json::json!([1, 3, 5]));
    let (v, _) = json(&["pq", "5,4,3,2/2,1,1", "--cut", "RRRRRRR"]);
    assert_eq!(v["P"], serde_json::json!([-3, -1, 0, 2]));
    assert_eq!(v["intersection"], serde_json::json!([-1]));
}

#[test]
fn double_schur_command() {
    let (v, code) = json(&["double-schur", "--lambda", "2,1", "--x", "1,2,-3/2", "--y", "0,1,2,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["agree"], true);
    assert_eq!(v["alternant"], v["tableaux"]);
}

#[test]
fn verify_writes_deterministic_reports() {
    let dir = std::env::temp_dir().join(format!("skewrank-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let strip_time = |path: &std::path::Path| {
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        v["wall_time_secs"] = Value::Null;
        v
    };
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    let args = ["verify", "cauchy-sign", "--n", "2", "--random", "50", "--random-n", "3", "--seed", "7"];
    let out = skewrank(&[&args[..], &["--out", a.to_str().unwrap(), "--jobs", "1"]].concat());
    assert_eq!(out.status.code(), Some(0));
    let out = skewrank(&[&args[..], &["--out", b.to_str().unwrap(), "--jobs", "2"]].concat());
    assert_eq!(out.status.code(), Some(0));
    let (ra, rb) = (strip_time(&a), strip_time(&b));
    assert_eq!(ra, rb);
    assert_eq!(ra["suite"], "cauchy-sign");
    assert_eq!(ra["seed"], 7);
    assert_eq!(ra["failed"], 0);
    assert_eq!(ra["passed"], ra["instances"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_small_suites() {
    let (v, code) = json(&["verify", "cauchy-sign", "--n", "1", "--range", "0..2", "--random", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["instances"], 3);
    let (v, code) = json(&["verify", "pq-invariance", "--max-cells", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["failed"], 0);
    let (v, code) = json(&["verify", "zrank-rank", "--max-cells", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["bounds"]["max_cells"], "6");
}
