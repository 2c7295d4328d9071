use std::process::{Command, Output};

use serde_json::Value;

const ZEROS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/zeros100.txt");

fn zetalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetalab")).args(args).output().expect("spawn zetalab")
}

fn json(args: &[&str]) -> Value {
    let out = zetalab(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn documented_examples() {
    let a = json(&["artin", "--curve", "y2=x3+x+1", "--p", "5"]);
    assert_eq!(a["fields"]["P"], serde_json::json!([1, 3, 5]));
    assert_eq!(a["fields"]["N"].as_array().unwrap()[..3], [9, 27, 108]);
    assert_eq!(a["ok"], true);

    let n = json(&["nazeta", "--rank", "2", "--convention", "paper", "--p", "5", "--curve", "y2=x3+x+1"]);
    assert_eq!(strs(&n["fields"]["numerator"]), ["1/1", "4/1", "6/1", "20/1", "25/1"]);
    assert_eq!(n["fields"]["scale"], "9/4");

    let t = json(&["theta", "--lattice", "2 0 / 0 0.5"]);
    assert!(t["fields"]["residual"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn every_report_matches_the_schema() {
    let schema: Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    let v = jsonschema::validator_for(&schema).expect("schema compiles");
    let jobs: &[&[&str]] = &[
        &["artin", "--q", "7", "--genus", "2", "--counts", "8,64"],
        &["nazeta", "--rank", "3", "--q", "5", "--n1", "9", "--convention", "split"],
        &["census", "--rank", "2", "--p", "5", "--curve", "y2=x3+4x"],
        &["mass", "--p", "7", "--curve", "y2=x3+x+1"],
        &["allbundles", "--p", "7", "--curve", "y2=x3+3x+2", "--order", "6"],
        &["euler", "--curve", "y2=x3-x+1", "--s", "2.5+1i", "--bound", "200"],
        &["lattice", "--lattice", "1/2 0 / 0 2"],
        &["theta", "--gram", "2 1 / 1 2"],
        &["xi", "--s", "0.5+21.022i", "--s", "3"],
        &["explicit-ff", "--q", "7", "--genus", "2", "--counts", "8,64", "--count", "5"],
        &["explicit-nf", "--zeros", ZEROS, "--k", "5,10", "--mu", "-0.1", "--sigma", "0.1"],
        &["andrianov"],
    ];
    for job in jobs {
        let r = json(job);
        let errors: Vec<String> = v.iter_errors(&r).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{job:?}: {errors:?}");
        assert_eq!(r["command"], job[0]);
    }
    // rationals really are num/den strings
    let bad = serde_json::json!({"command": "artin", "fields": {"x": {"a": 1}}, "tables": {}});
    assert!(!v.is_valid(&bad));
}

#[test]
fn exit_codes() {
    assert_eq!(zetalab(&["nonsense"]).status.code(), Some(64));
    assert_eq!(zetalab(&["artin", "--bogus"]).status.code(), Some(64));
    assert_eq!(zetalab(&["theta"]).status.code(), Some(64));
    assert_eq!(zetalab(&["theta", "--lattice", "1 0", "--gram", "1"]).status.code(), Some(64));
    // invalid input
    assert_eq!(zetalab(&["artin", "--curve", "y2=x3+x+1", "--p", "6"]).status.code(), Some(1));
    assert_eq!(zetalab(&["artin", "--curve", "y2=x3", "--p", "5"]).status.code(), Some(1));
    assert_eq!(zetalab(&["artin", "--q", "5", "--genus", "1", "--counts", "20"]).status.code(), Some(1));
    assert_eq!(zetalab(&["lattice", "--lattice", "1 2 / 2 4"]).status.code(), Some(1));
    assert_eq!(zetalab(&["euler", "--curve", "y2=x3+x+1", "--s", "1"]).status.code(), Some(1));
    assert_eq!(zetalab(&["explicit-nf", "--zeros", "/nonexistent/zeros.txt"]).status.code(), Some(1));
    // budgets
    let big = zetalab(&["explicit-nf", "--zeros", ZEROS, "--prime-bound", "100000000"]);
    assert_eq!(big.status.code(), Some(2), "{}", String::from_utf8_lossy(&big.stderr));
    assert_eq!(zetalab(&["artin", "--curve", "y2=x3+x+1", "--p", "5", "--n", "12"]).status.code(), Some(2));
    assert_eq!(zetalab(&["--help"]).status.code(), Some(0));
}

#[test]
fn formats_and_out_file() {
    let dir = std::env::temp_dir().join(format!("zetalab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let out = zetalab(&["artin", "--curve", "y2=x3+x+1", "--p", "5", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.contains("\nP,\"[1, 3, 5]\"\n") && csv.contains("\n3,108\n"), "{csv}");
    let text = String::from_utf8(zetalab(&["andrianov", "--format", "text"]).stdout).unwrap();
    assert!(text.contains("match: true"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn extension_field_curves() {
    // over F_25: a_25 = a_5^2 - 2*5 = -1 and 27 points
    let a = json(&["artin", "--curve", "y2=x3+x+1", "--p", "5", "--n", "2", "--terms", "2"]);
    assert_eq!(a["fields"]["q"], 25);
    assert_eq!(a["fields"]["N"], serde_json::json!([27, 675]));
    assert_eq!(a["fields"]["P"], serde_json::json!([1, 1, 25]));
}
