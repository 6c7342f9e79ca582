use std::path::PathBuf;
use std::process::{Command, Output};

fn twl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twl")).args(args).output().expect("run twl")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rings_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../rings")
}

#[test]
fn relation_audit_example_exits_zero() {
    let o = twl(&["audit", "R", "--ring", "f4.ring", "--n", "3", "--samples", "1000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("audit: relations R\n"));
    assert!(text.contains("result: PASS"));
    assert!(text.ends_with("seed: 7\n"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("elapsed:"));
}

#[test]
fn k2_witness_example() {
    let o = twl(&["k2-witness", "c(t,2)", "--ring", "f5.ring"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("witness = true\n") && text.contains("tame = 3\n"), "{text}");
}

#[test]
fn factor_example_prints_three_parts() {
    let o = twl(&["factor", "x[2,1](1)", "--ring", "f5.ring", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "u = x[1,2](1)\nw = sigma=[2,1]; units=(1, 4)\nv = x[1,2](1)\nverified = true\n");
    let r = twl(&["rho", "x[2,1](1)", "--ring", "f5.ring", "--n", "2"]);
    assert_eq!(stdout(&r), "sigma=[2,1]; units=(1, 4)\n");
}

#[test]
fn ring_files_on_disk_are_accepted() {
    let path = rings_dir().join("f9.ring");
    let o = twl(&["eval", "x[1,2](g)*x[1,2](g)", "--ring", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[1, 2*g; 0, 1]\n");
}

#[test]
fn extension_check_and_output_file() {
    let out = std::env::temp_dir().join(format!("twl-cli-test-{}.txt", std::process::id()));
    let args = ["extension", "check", "--n", "2", "--ring", "f9", "--samples", "20", "--seed", "3", "--family", "central"];
    let o = twl(&[&args[..], &["--output", out.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&out).unwrap();
    std::fs::remove_file(&out).ok();
    assert_eq!(written, stdout(&o));
    assert_eq!(stdout(&twl(&args)), written, "same seed, same bytes");
}

#[test]
fn usage_and_config_errors_exit_one() {
    assert_eq!(twl(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(twl(&["audit", "R9", "--ring", "f4"]).status.code(), Some(1));
    assert_eq!(twl(&["eval", "x[1,2](1)", "--ring", "no-such.ring"]).status.code(), Some(1));
    assert_eq!(twl(&["eval", "x[1,2](", "--ring", "f4"]).status.code(), Some(1));
    assert_eq!(twl(&["extension", "check", "--n", "7", "--ring", "f9"]).status.code(), Some(1));
    assert_eq!(twl(&["--help"]).status.code(), Some(0));
}

#[test]
fn failed_check_exits_two() {
    // Constant symbols have trivial tame value, so this is not a nontrivial class.
    let o = twl(&["k2-witness", "c(2,3)", "--ring", "f5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("nontrivial = false"));
}
