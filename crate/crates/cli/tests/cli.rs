use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::OnceLock;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_loopkit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("loopkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn q64_file() -> &'static str {
    static P: OnceLock<String> = OnceLock::new();
    P.get_or_init(|| {
        let p = scratch("q64.tbl");
        let out = run(&["paper-example", "--order", "64", "-o", p.to_str().unwrap()]);
        assert!(out.status.success());
        p.to_string_lossy().into_owned()
    })
}

fn write(name: &str, text: &str) -> String {
    let p = scratch(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn emitted_table_validates() {
    assert_eq!(code(&run(&["validate", q64_file()])), 0);
}

#[test]
fn broken_tables_fail_validation() {
    let not_latin = write("bad.tbl", "3\n0 1 2\n1 1 0\n2 0 1\n");
    let out = run(&["validate", &not_latin]);
    assert_eq!(code(&out), 1);
    let garbage = write("garbage.tbl", "two\n");
    assert_eq!(code(&run(&["validate", &garbage])), 2);
    assert_eq!(code(&run(&["validate", "/nonexistent/table.tbl"])), 2);
}

#[test]
fn moved_identity_is_relabelled() {
    let p = write("z3.tbl", "3\n1 2 0\n2 0 1\n0 1 2\n");
    let out_path = scratch("z3-relabelled.tbl");
    let out = run(&["validate", &p, "--relabel", "-o", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&run(&["validate", out_path.to_str().unwrap()])), 0);
}

#[test]
fn laws_and_exit_codes() {
    assert_eq!(code(&run(&["check", q64_file(), "--law", "buchsteiner"])), 0);
    assert_eq!(code(&run(&["check", q64_file(), "--law", "cc"])), 1);
    assert_eq!(code(&run(&["check", q64_file(), "--law", "no-such-law"])), 2);
}

#[test]
fn witnesses_are_reproducible() {
    let a = run(&["--json", "check", q64_file(), "--law", "extra", "--mode", "sampled", "--samples", "5000", "--seed", "11"]);
    let b = run(&["--json", "check", q64_file(), "--law", "extra", "--mode", "sampled", "--samples", "5000", "--seed", "11"]);
    assert_eq!(code(&a), 1);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["records"][0]["seed"], 11);
    assert!(v["records"][0]["witness"].is_string());
}

#[test]
fn json_reports_are_deterministic() {
    let a = run(&["--json", "suite", q64_file(), "--kind", "minverse:1"]);
    let b = run(&["--json", "suite", q64_file(), "--kind", "minverse:1"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert!(v["records"][0].get("timing_ms").is_none());
}

#[test]
fn isotopes_round_trip() {
    let out_path = scratch("q64-iso.tbl");
    let out = run(&["isotope", q64_file(), "--at", "5", "-o", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&run(&["check", out_path.to_str().unwrap(), "--law", "buchsteiner"])), 0);
    let p = run(&["isotope", q64_file(), "--principal", "3,9"]);
    assert_eq!(code(&p), 0);
    assert!(String::from_utf8_lossy(&p.stdout).starts_with("# relabelling"));
}

#[test]
fn quotients_need_normal_subloops() {
    let c4 = write("c4.tbl", "4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
    let out = run(&["quotient", &c4, "--subloop", "2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l.trim() == "2"));
    let s3 = write("s3.tbl", "6\n0 1 2 3 4 5\n1 2 0 5 3 4\n2 0 1 4 5 3\n3 4 5 0 1 2\n4 5 3 2 0 1\n5 3 4 1 2 0\n");
    assert_eq!(code(&run(&["validate", &s3])), 0);
    assert_eq!(code(&run(&["quotient", &s3, "--subloop", "3"])), 1);
    assert_eq!(code(&run(&["quotient", &s3, "--subloop", "1"])), 0);
}

#[test]
fn structure_reports_the_nucleus() {
    let out_path = scratch("q64-structure.json");
    let out = run(&["structure", q64_file(), "--nuclei", "--json-out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert!(v.to_string().contains("nucleus"));
}

#[test]
fn suite_on_a_non_buchsteiner_loop_fails_cleanly() {
    let p = write("l5.tbl", "5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n");
    assert_eq!(code(&run(&["validate", &p])), 0);
    assert_eq!(code(&run(&["suite", &p, "--kind", "theorems"])), 1);
}
