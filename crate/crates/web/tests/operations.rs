use serde_json::Value;
use skewrank_web::{analyze, decompose, determinant};

fn parse(r: Result<String, String>) -> Value {
    serde_json::from_str(&r.expect("operation succeeds")).unwrap()
}

#[test]
fn analyze_reports_agreeing_ranks() {
    let v = parse(analyze("6,5,5,3/2,1,1"));
    assert_eq!(v["cells"].as_array().unwrap().len(), 15);
    assert_eq!(v["diagonals"], 9);
    for key in ["diagonal", "code", "jt", "min_strips", "zrank"] {
        assert_eq!(v["ranks"][key], 3, "{key}");
    }
    let covered: usize = v["min_strips"].as_array().unwrap().iter().map(|s| s["cells"].as_array().unwrap().len()).sum();
    assert_eq!(covered, 15);

    let v = parse(analyze("5,4,3,2/2,1,1"));
    assert_eq!(v["code"]["top"], "101101000");
    assert_eq!(v["code"]["bottom"], "001010101");
}

#[test]
fn large_shapes_skip_the_strip_search() {
    let v = parse(analyze("10,9,8,7,6/1"));
    assert!(v["ranks"]["min_strips"].is_null());
    assert!(v["min_strips"].is_null());
    assert_eq!(v["ranks"]["zrank"], 5);
}

#[test]
fn decompose_builds_the_matrix() {
    let v = parse(decompose("6,5,5,3/2,1,1", "RRRRRRRR"));
    assert_eq!(v["grank"], 3);
    assert_eq!(v["identity"], true);
    assert_eq!(v["matrix"][0][3], "0");
    assert_eq!(v["matrix"][1][3], "1");
    assert!(v["matrix"][0][0].as_str().unwrap().starts_with("s["));
}

#[test]
fn determinants() {
    let v = parse(determinant("cauchy", "3,1", "0,2"));
    assert_eq!((v["det"].as_str(), v["omega"].as_u64()), (Some("-1"), Some(1)));
    assert_eq!(v["sign"], v["predicted_sign"]);
    let v = parse(determinant("factorial", "4,2", "1,2"));
    assert_eq!(v["det"], "1/12");
    let v = parse(determinant("binomial", "4,2", "1,2"));
    assert_eq!(v["det"], "1/6");
}

#[test]
fn errors_are_messages() {
    assert!(analyze("2,3").is_err());
    assert!(analyze(&"9,".repeat(6)).is_err());
    assert!(decompose("3,2/1", "RR").is_err());
    assert!(determinant("cauchy", "1", "2").is_err());
    assert!(determinant("hadamard", "1", "0").is_err());
    assert!(determinant("binomial", "x", "0").is_err());
}
