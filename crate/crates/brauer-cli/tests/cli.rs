use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

fn brauer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compare_exit_codes() {
    let o = brauer(&["compare", &data("star3.bg"), &data("path3.bg")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Equivalent\n");

    let o = brauer(&["compare", &data("loop1.bg"), &data("edge1.bg")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("OutOfScope"));

    let o = brauer(&["compare", &data("triangle3.bg"), &data("star3.bg")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("NotEquivalent"));
}

#[test]
fn invariants_json() {
    let o = brauer(&["invariants", &data("star4.bg"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["perimeters"], serde_json::json!([8]));
    assert_eq!(v["e_count"], 4);
    assert_eq!(v["omega_boundary"], serde_json::json!([-8]));
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(brauer(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(brauer(&["invariants"]).status.code(), Some(2));
    assert_eq!(brauer(&["validate", &data("broken.bg")]).status.code(), Some(2));
    assert_eq!(brauer(&["validate", &data("missing.bg")]).status.code(), Some(2));
    assert_eq!(
        brauer(&["mutate", &data("star3.bg"), "--edge", "nope"]).status.code(),
        Some(2)
    );
    let o = brauer(&["invariants", &data("star4.bg"), "--format", "yaml"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn validate_arc_systems() {
    let o = brauer(&["validate", &data("disc3.bg")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 disc faces"));
    let o = brauer(&["validate", &data("disc3_bad.bg")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("grading violation"));
}

#[test]
fn presentation_and_dimension() {
    let o = brauer(&["present", &data("two_trivalent.bg")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text
        .lines()
        .any(|l| l.starts_with("rel +1 ") && l.contains(" -1 ") && l.matches('*').count() == 4));
    assert_eq!(stdout(&brauer(&["dim", &data("two_trivalent.bg")])), "22\n");
    let o = brauer(&["present", &data("star4.bg"), "--kind", "reduced"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("arrow")).count(), 4);
}

#[test]
fn mutate_output_parses_and_keeps_invariants() {
    let o = brauer(&["mutate", &data("star3.bg"), "--edge", "x1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# move x1 case leaf"));
    assert!(text.contains("# term -1 P[x1]"));
    let moved = brauer::bgfile::parse(&text).unwrap();
    let before = brauer::bgfile::parse(&std::fs::read_to_string(data("star3.bg")).unwrap()).unwrap();
    assert_eq!(
        brauer::invariants::invariant_bundle(&moved),
        brauer::invariants::invariant_bundle(&before)
    );
}

#[test]
fn search_finds_and_rejects() {
    let o = brauer(&["search", &data("star3.bg"), &data("path3.bg"), "--max-depth", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Found"));
    let o = brauer(&["search", &data("triangle3.bg"), &data("star3.bg"), "--max-depth", "6"]);
    assert_eq!(o.status.code(), Some(1));
    let o = brauer(&["search", &data("star3.bg"), &data("path3.bg"), "--max-depth", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("NotFound"));
}

#[test]
fn enumerate_and_classes() {
    let o = brauer(&["enumerate", "--edges", "2", "--max-mult", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("bg 1").count(), 5);
    let o = brauer(&["enumerate", "--edges", "3", "--max-mult", "1", "--genus", "1"]);
    let text = stdout(&o);
    for doc in text.split("\n\n") {
        assert_eq!(brauer::bgfile::parse(doc).unwrap().genus().unwrap(), 1);
    }
    let o = brauer(&["classes", "--edges", "3", "--max-mult", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("class 14 members=2"));
    assert_eq!(
        brauer(&["classes", "--edges", "1", "--max-mult", "1"]).status.code(),
        Some(3)
    );
}

#[test]
fn ainf_check_disc_systems() {
    for f in ["disc3.bg", "disc4.bg"] {
        let o = brauer(&["ainf-check", &data(f), "--convention-search"]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        assert!(text.contains("relations: pass"));
        assert!(text.contains("trivial extension relations: pass"));
        assert!(text.contains("conventions passing: 1"));
    }
    let o = brauer(&["ainf-check", &data("disc3_bad.bg")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        brauer(&["ainf-check", &data("disc3.bg"), "--max-len", "2"])
            .status
            .code(),
        Some(2)
    );
    let o = brauer(&["ainf-check", &data("star3.bg"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["check"]["category"]["failure"], serde_json::Value::Null);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["classes", "--edges", "3", "--max-mult", "2"],
        vec!["enumerate", "--edges", "3", "--max-mult", "1"],
    ] {
        assert_eq!(brauer(&args).stdout, brauer(&args).stdout);
    }
    let a = data("star3.bg");
    let b = data("path3.bg");
    let args = ["search", a.as_str(), b.as_str(), "--max-depth", "6", "--format", "json"];
    assert_eq!(brauer(&args).stdout, brauer(&args).stdout);
}
