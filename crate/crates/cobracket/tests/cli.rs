//! End-to-end tests of the `cobracket` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobracket"))
        .args(args)
        .env_remove("COBRACK_MODE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn cobracket_negates_the_worked_example() {
    let out = run(&[
        "cobracket",
        "--genus",
        "3",
        "--word",
        "c4 c6 c3 c1- c5- c4",
        "--mode",
        "literal",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    // negation of the four-term coproduct, factors in canonical rotation
    assert!(text.contains("[c1- c3](x)[c4 c4 c6 c5-]"), "{text}");
    assert!(text.contains("[c4](x)[c1- c5- c4 c6 c3]"), "{text}");
    let bv = run(&[
        "coproduct-bv",
        "--genus",
        "3",
        "--word",
        "c4 c6 c3 c1- c5- c4",
        "--mode",
        "literal",
    ]);
    assert!(stdout(&bv).starts_with('-'));
    assert!(!text.starts_with('-'));
}

#[test]
fn trivial_results_and_level() {
    let out = run(&["cobracket", "--genus", "2", "--word", "c1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0");
    let out = run(&["level", "--genus", "2", "--word", "c1 c2 c1 c2"]);
    assert_eq!(stdout(&out).trim(), "2");
    let out = run(&["relator", "--genus", "1"]);
    assert_eq!(stdout(&out).trim(), "c1 c2- c1- c2");
}

#[test]
fn exit_codes() {
    let out = run(&["cobracket", "--genus", "2", "--word", "c9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
    let out = run(&["cobracket", "--genus", "2", "--word", "zzz"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["cobracket", "--genus", "1", "--word", "c1"]);
    assert_eq!(out.status.code(), Some(3)); // no conjugacy normalization at genus 1
}

#[test]
fn json_round_trip_and_schema() {
    let out = run(&[
        "coproduct-bv",
        "--genus",
        "3",
        "--word",
        "c4 c6 c3 c1- c5- c4",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["genus"], 3);
    assert_eq!(doc["mode"], "dehn");
    assert_eq!(doc["engine"], "combinatorial");
    assert_eq!(doc["level"], 1);
    assert_eq!(doc["word"][0], serde_json::json!([4, 1]));
    assert_eq!(doc["word"][3], serde_json::json!([1, -1]));
    let terms = doc["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 4);
    for t in terms {
        assert!(t["coeff"].is_i64());
        assert!(t["left"].is_array() && t["right"].is_array());
    }
    // byte-identical re-emission
    let again = run(&[
        "coproduct-bv",
        "--genus",
        "3",
        "--word",
        "c4 c6 c3 c1- c5- c4",
        "--format",
        "json",
    ]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn latex_format() {
    let out = run(&[
        "cobracket",
        "--genus",
        "3",
        "--word",
        "c4 c6 c3 c1- c5- c4",
        "--format",
        "latex",
        "--mode",
        "literal",
    ]);
    let text = stdout(&out);
    assert!(text.contains("\\otimes"));
    assert!(text.contains("c_{1}^{-1}"));
}

#[test]
fn batch_file_processing() {
    let dir = std::env::temp_dir().join("cobracket-batch-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("words.txt");
    std::fs::write(&path, "# two words\nc1\nc4 c6 c3 c1- c5- c4\n").unwrap();
    let out = run(&[
        "coproduct-bv",
        "--genus",
        "3",
        "--file",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "0");
    assert!(lines[1].contains("(x)"));
    // a bad line fails the whole batch with a parse exit
    std::fs::write(&path, "c1\nc99\n").unwrap();
    let out = run(&[
        "coproduct-bv",
        "--genus",
        "3",
        "--file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_mode_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_cobracket"))
        .args(["coproduct-bv", "--genus", "3", "--word", "c4 c6 c3 c1- c5- c4", "--format", "json"])
        .env("COBRACK_MODE", "literal")
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["mode"], "literal");
}

#[test]
fn normalize_command() {
    let out = run(&["normalize", "--genus", "2", "--word", "c2- c1 c2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "[c1]");
    // the relator is trivial in the group
    let out = run(&["normalize", "--genus", "2", "--word", "c1 c2- c3 c4- c1- c2 c3- c4"]);
    assert_eq!(stdout(&out).trim(), "[1]");
}

#[test]
fn oracle_check_word_and_svg() {
    let dir = std::env::temp_dir().join("cobracket-svg-test");
    std::fs::create_dir_all(&dir).unwrap();
    let svg_path = dir.join("figure.svg");
    let out = run(&[
        "oracle-check",
        "--genus",
        "2",
        "--word",
        "c1 c1 c3 c1- c3",
        "--svg",
        svg_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("6 intersections"));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg.matches("fill=\"#c22\"").count(), 6);
}

#[test]
fn oracle_check_random() {
    let out = run(&[
        "oracle-check",
        "--genus",
        "2",
        "--random",
        "25",
        "--max-len",
        "10",
        "--seed",
        "7",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 25);
    // deterministic under the same seed
    let again = run(&[
        "oracle-check",
        "--genus",
        "2",
        "--random",
        "25",
        "--max-len",
        "10",
        "--seed",
        "7",
    ]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn coproduct_gen_divides() {
    // the square of the five-letter fixture has level 2
    let word = "c1 c1 c3 c1- c3 c1 c1 c3 c1- c3";
    let bv = run(&["coproduct-bv", "--genus", "2", "--word", word]);
    let gen = run(&["coproduct-gen", "--genus", "2", "--word", word]);
    assert!(bv.status.success() && gen.status.success());
    assert_ne!(stdout(&gen).trim(), "0");
    let bv = run(&["coproduct-bv", "--genus", "2", "--word", word, "--format", "json"]);
    let gen = run(&["coproduct-gen", "--genus", "2", "--word", word, "--format", "json"]);
    let bv: serde_json::Value = serde_json::from_str(stdout(&bv).trim()).unwrap();
    let gen: serde_json::Value = serde_json::from_str(stdout(&gen).trim()).unwrap();
    assert_eq!(bv["level"], 2);
    let (bt, gt) = (bv["terms"].as_array().unwrap(), gen["terms"].as_array().unwrap());
    assert_eq!(bt.len(), gt.len());
    for (b, g) in bt.iter().zip(gt) {
        assert_eq!((b["left"].clone(), b["right"].clone()), (g["left"].clone(), g["right"].clone()));
        assert_eq!(b["coeff"].as_i64().unwrap(), 2 * g["coeff"].as_i64().unwrap());
    }
}
