use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn cqg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cqg")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.extend(["--json", "-"]);
    let o = cqg(&a);
    let text = stdout(&o);
    let start = text.find("{\n").expect("JSON document on stdout");
    (serde_json::from_str(&text[start..]).unwrap(), o.status.code().unwrap())
}

#[test]
fn haar_table_of_su_q_2() {
    let (v, code) = json_of(&["haar", "--preset", "su_q_2", "--degree", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["result"]["solution_dim"], 1);
    assert_eq!(v["result"]["values"]["g g*"], "1/(1 + q^2)");
    assert!(v.to_string().contains("1/(1 + q^2)"));
}

#[test]
fn normalize_commutation_relation() {
    let o = cqg(&["normalize", "--preset", "su_q_2", "--expr", "g a"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q^-1 * a g");
}

#[test]
fn fuse_depth_two() {
    let (v, code) = json_of(&["fuse", "--preset", "su_q_2", "--depth", "2"]);
    assert_eq!(code, 0);
    let rows = v["result"]["fusion"].as_array().unwrap();
    let uu = rows.iter().find(|r| r["left"] == "d2#1" && r["right"] == "d2#1").unwrap();
    let dims: Vec<&str> = uu["summands"].as_array().unwrap().iter().map(|s| s["label"].as_str().unwrap()).collect();
    assert_eq!(dims, vec!["d1#0", "d3#2"]);
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["dual", "--preset", "c_s3", "--seed", "11", "--json", "-"];
    let a = cqg(&args);
    let b = cqg(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("seed 11"));
}

#[test]
fn every_command_passes_on_a_finite_preset() {
    for cmd in ["verify-hopf", "haar", "f-matrix", "fuse", "decompose", "dual", "regrep-check", "axioms-wor1"] {
        let o = cqg(&[cmd, "--preset", "c_z4", "--degree", "2"]);
        assert_eq!(o.status.code(), Some(0), "{}: {}", cmd, String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn file_input_matches_preset() {
    let file = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/su_q_2.cqg");
    let from_file = json_of(&["haar", "--file", file.to_str().unwrap(), "--degree", "4"]).0;
    let from_preset = json_of(&["haar", "--preset", "su_q_2", "--degree", "4"]).0;
    assert_eq!(from_file["result"], from_preset["result"]);
}

#[test]
fn exit_codes_by_error_class() {
    assert_eq!(cqg(&["haar", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(cqg(&["haar", "--file", "/nonexistent.cqg"]).status.code(), Some(2));
    assert_eq!(cqg(&["haar", "--preset", "su_q_2", "--q-samples", "0,0.5"]).status.code(), Some(2));
    assert_eq!(cqg(&["normalize", "--preset", "su_q_2", "--expr", "a +"]).status.code(), Some(2));
    assert_eq!(cqg(&["verify-hopf", "--file", &data("non_confluent.cqg")]).status.code(), Some(3));
    assert_eq!(cqg(&["verify-hopf", "--file", &data("bad_comultiplication.cqg")]).status.code(), Some(4));
    assert_eq!(cqg(&["regrep-check", "--preset", "su_q_2"]).status.code(), Some(2));
}
