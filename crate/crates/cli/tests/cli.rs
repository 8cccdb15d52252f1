use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const EX3_P: &str = "a, b -> -c. b -> d. b -> -c. -c -> e. a, -c -> f. a.\n";
const EX3_Q: &str = "a, b -> c. a -> e. a, e -> c. a, e -> d. c -> d. c -> f. b.\n";

fn fcmerge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fcmerge"))
        .args(args)
        .env_remove("FCMERGE_MAX_ENUM")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(TempDir::new().unwrap())
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let path = self.0.path().join(name);
        fs::write(&path, text).unwrap();
        path
    }
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn example_three_arbitration() {
    let f = Files::new();
    let (p, q) = (f.write("P.fc", EX3_P), f.write("Q.fc", EX3_Q));
    for (op, expected) in [("rk", ""), ("h", "d"), ("eh", "d, e")] {
        let out = fcmerge(&["arbitrate", "--op", op, s(&p), s(&q)]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out), format!("{expected}\n"));
    }
    let out = fcmerge(&["arbitrate", s(&p), s(&q)]);
    assert_eq!(stdout(&out), "\n", "default op is rk");
}

#[test]
fn cns_of_empty_file() {
    let f = Files::new();
    let empty = f.write("empty.fc", "");
    let out = fcmerge(&["cns", s(&empty)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "\n");
}

#[test]
fn cns_with_strata() {
    let f = Files::new();
    let p = f.write(
        "ex1.fc",
        "a. u. a -> b. a -> c. b -> t. c -> s. t -> s. s -> w. u -> h.",
    );
    let out = fcmerge(&["cns", "--strata", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "a, b, c, h, s, t, u, w\nL0: a, u\nL1: b, c, h\nL2: s, t\nL3: w\n"
    );
}

#[test]
fn json_output() {
    let f = Files::new();
    let (p, q) = (f.write("P.fc", EX3_P), f.write("Q.fc", EX3_Q));
    let out = fcmerge(&["--json", "arbitrate", "--op", "eh", s(&p), s(&q)]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["closure"], serde_json::json!(["d", "e"]));
    assert_eq!(doc["rendered"], "d, e");
}

#[test]
fn revise_and_merge() {
    let f = Files::new();
    let (p, q) = (f.write("P.fc", EX3_P), f.write("Q.fc", EX3_Q));
    let out = fcmerge(&["revise", "--op", "h", s(&p), s(&q)]);
    assert_eq!(stdout(&out), "b, d\n");

    let constraint = f.write("c.fc", "a. b -> c. d -> c.");
    let phi = f.write("phi.fc", "a. a -> d. a, d -> c.\n---\na. b. c -> -b. a -> d.\n");
    let out = fcmerge(&["merge", "--op", "h", s(&constraint), s(&phi)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "a, c, d\n");
    let out = fcmerge(&["merge", s(&constraint), s(&phi)]);
    assert_eq!(stdout(&out), "a\n");
}

#[test]
fn check_exit_codes() {
    let f = Files::new();
    let (p1, p2) = (f.write("p1.fc", "a -> c. b."), f.write("p2.fc", "b."));
    let (q1, q2) = (f.write("q1.fc", "b -> c. a."), f.write("q2.fc", "a."));
    let out = fcmerge(&[
        "check",
        "SA5",
        "--P1",
        s(&p1),
        "--P2",
        s(&p2),
        "--Q1",
        s(&q1),
        "--Q2",
        s(&q2),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("violated"));
    assert!(stdout(&out).contains("arb(P1,Q1) = {a, b, c}"));

    let out = fcmerge(&["check", "SA1", "--P", s(&p1), "--Q", s(&q1)]);
    assert_eq!(out.status.code(), Some(0));

    let out = fcmerge(&["check", "SA1", "--P", s(&p1)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("Q"));
}

#[test]
fn parse_errors_exit_2() {
    let f = Files::new();
    let bad = f.write("bad.fc", "a.\nb c.");
    let out = fcmerge(&["cns", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("2:3"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());

    let out = fcmerge(&["cns", "/nonexistent/file.fc"]);
    assert_eq!(out.status.code(), Some(2));

    let sep = f.write("sep.fc", "---\n");
    let a = f.write("a.fc", "a.");
    let out = fcmerge(&["merge", s(&a), s(&sep)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(fcmerge(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(fcmerge(&["arbitrate", "--op", "xx", "a", "b"]).status.code(), Some(3));
    assert_eq!(fcmerge(&["check", "SA9"]).status.code(), Some(3));
    assert_eq!(fcmerge(&["fuzz", "--trials", "0"]).status.code(), Some(3));
    assert_eq!(fcmerge(&["fuzz", "--neg-prob", "2"]).status.code(), Some(3));
    assert_eq!(fcmerge(&["--help"]).status.code(), Some(0));
}

#[test]
fn size_limit_exits_4() {
    let f = Files::new();
    let (p, q) = (f.write("P.fc", EX3_P), f.write("Q.fc", EX3_Q));
    let out = Command::new(env!("CARGO_BIN_EXE_fcmerge"))
        .args(["arbitrate", "--op", "h", s(&p), s(&q)])
        .env("FCMERGE_MAX_ENUM", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn corpus_passes() {
    let out = fcmerge(&["corpus"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("0 mismatched"));
}

#[test]
fn corpus_from_directory() {
    let f = Files::new();
    f.write("a.fc", "a.");
    f.write("b.fc", "-a.");
    f.write(
        "expectations.toml",
        "[[entry]]\nname = \"clash\"\nkind = \"arbitrate\"\na = \"a.fc\"\nb = \"b.fc\"\nexpect = { rk = \"a\" }\n",
    );
    let out = fcmerge(&["corpus", "--dir", f.0.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("MISMATCH"));

    let empty = Files::new();
    empty.write("expectations.toml", "");
    let out = fcmerge(&["corpus", "--dir", empty.0.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn fuzz_is_deterministic_across_jobs() {
    let args = [
        "--json",
        "fuzz",
        "--seed",
        "7",
        "--trials",
        "30",
        "--postulates",
        "SA1,SA5,FP4",
    ];
    let one = fcmerge(&[&args[..], &["--jobs", "1"]].concat());
    let four = fcmerge(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&four));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&one)).unwrap();
    assert_eq!(doc["records"].as_array().unwrap().len(), 3 * 3 * 30);
}

#[test]
fn fuzz_shrinks_sa5_witnesses() {
    let out = fcmerge(&[
        "--json",
        "fuzz",
        "--trials",
        "200",
        "--postulates",
        "SA5",
        "--strategies",
        "rk",
        "--shrink",
    ]);
    assert_eq!(out.status.code(), Some(0), "SA5 is not a guaranteed postulate");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let violations = doc["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    for v in violations {
        let rules: usize = v["bindings"]
            .as_object()
            .unwrap()
            .values()
            .map(|text| text.as_str().unwrap().lines().filter(|l| !l.is_empty()).count())
            .sum();
        assert!(rules <= 5, "{v}");
    }
}
