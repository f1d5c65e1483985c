use std::process::{Command, Output};

use serde_json::Value;

fn widecat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_widecat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = widecat(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

#[test]
fn classify_text() {
    let o = widecat(&["classify", "--weights", "2,3,5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "domestic, \u{3b4}(\u{3c9})=\u{2212}1\n");
}

#[test]
fn classify_from_config_file() {
    let dir = std::env::temp_dir().join(format!("widecat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("line.json");
    std::fs::write(&path, r#"{"weights": [2, 3], "ordinary_points": ["a"]}"#).unwrap();
    let v = json(&[
        "classify",
        "--config",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(v["type"], "domestic");
    assert_eq!(v["k0_rank"], 5);
}

#[test]
fn hom_and_ext() {
    assert_eq!(
        stdout(&widecat(&["hom", "--weights", "2", "O", "O(0,0;1)"])),
        "2\n"
    );
    assert_eq!(
        stdout(&widecat(&["ext", "--weights", "2", "S(inf,1)", "S(inf,0)"])),
        "1\n"
    );
    let v = json(&["ext", "--weights", "2", "--format", "json", "T(a,2)", "O"]);
    assert_eq!(v["ext"], 2);
}

#[test]
fn exc_check_orders_matter() {
    assert_eq!(
        stdout(&widecat(&["exc-check", "--weights", "2", "O", "O(1,0;0)"])),
        "exceptional\n"
    );
    assert_eq!(
        stdout(&widecat(&["exc-check", "--weights", "2", "O(1,0;0)", "O"])),
        "not exceptional\n"
    );
}

#[test]
fn tube_enum_rank_two() {
    let v = json(&["tube-enum", "--rank", "2", "--format", "json"]);
    assert_eq!(v["count"], 6);
    let nested = widecat(&["tube", "enum", "--rank", "2", "--format", "json"]);
    assert_eq!(
        stdout(&nested),
        serde_json::to_string_pretty(&v).unwrap() + "\n"
    );
    let dot = stdout(&widecat(&["tube-enum", "--rank", "2", "--format", "dot"]));
    assert_eq!(dot.matches("->").count(), 8);
}

#[test]
fn poset_dot_is_stable() {
    let a = widecat(&[
        "poset",
        "--weights",
        "2",
        "--window",
        "-2..3",
        "--format",
        "dot",
    ]);
    let b = widecat(&["poset", "--weights", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let dot = stdout(&a);
    assert!(dot.starts_with("digraph wid {\n  rankdir=BT;\n"));
    assert!(dot.contains("  \"T0(+1)\" -> \"T1(+1)\";\n"));
    assert_eq!(dot.matches("->").count(), 25);
}

#[test]
fn poset_json_full_scope() {
    let v = json(&[
        "poset",
        "--weights",
        "1,1",
        "--window",
        "0..1",
        "--scope",
        "full",
        "--universe",
        "a",
        "--format",
        "json",
    ]);
    let names: Vec<&str> = v["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"coh") && names.contains(&"0"));
    assert_eq!(v["certificate"]["pushout"], true);
}

#[test]
fn perp_reports_blocks() {
    let v = json(&["perp", "--weights", "3", "--format", "json", "S(inf,0,2)"]);
    assert!(v["members"]
        .as_array()
        .unwrap()
        .iter()
        .any(|m| m.as_str().unwrap().starts_with('O')));
    assert_eq!(
        v["decomposition"]["reduced_weights"],
        serde_json::json!([1])
    );
}

#[test]
fn cox_of_a_file() {
    let dir = std::env::temp_dir().join(format!("widecat-cox-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("seq.json");
    std::fs::write(&path, r#"{"sequences": [["O"], ["O", "O(1,0;0)"]]}"#).unwrap();
    let v = json(&[
        "cox",
        "--weights",
        "2",
        "--sequence",
        path.to_str().unwrap(),
    ]);
    let seqs = v["sequences"].as_array().unwrap();
    assert_eq!(seqs[0]["abs_length"], 1);
    assert_eq!(seqs[1]["abs_length"], 2);
    assert_eq!(
        v["nc_leq"],
        serde_json::json!([[true, true], [false, true]])
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        widecat(&["hom", "--weights", "x", "O", "O"]).status.code(),
        Some(2)
    );
    assert_eq!(
        widecat(&["hom", "--weights", "2", "Q", "O"]).status.code(),
        Some(2)
    );
    assert_eq!(
        widecat(&["poset", "--weights", "2", "--window", "3..1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(widecat(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn unsupported_computations_exit_one() {
    let o = widecat(&["poset", "--weights", "2,3,5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_passes() {
    let o = widecat(&["verify"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 13);
}
