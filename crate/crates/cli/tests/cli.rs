//! End-to-end tests of the `fiberfull` binary: exit codes, report shape,
//! determinism, and the documented flags.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fiberfull"))
}

fn fixture(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("fiberfull-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const I1: &str = "ring x y z over QQ\norder grevlex\nideal I1 = x^2, y^2, x*y, x*z, y*z\n";
const EX5: &str = "ring x1 x2 x3 x4 x5 x6 over QQ\nideal E5 = x1*x4, x1*x5, x1*x6, \
                   x2*x4, x2*x5, x2*x6, x3*x4, x3*x5, x3*x6, x1*x2*x3\n";
const CUBIC: &str = "ring x y z w over QQ\nideal TC = x*z - y^2, x*w - y*z, y*w - z^2\n";

#[test]
fn criterion_pass_exits_zero() {
    let f = fixture("i1.ideal", I1);
    let out = run(&["criterion", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn criterion_fail_exits_two() {
    let f = fixture("ex5.ideal", EX5);
    let out = run(&["criterion", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("FAIL"));
    assert!(text.contains("[5]"), "failing slot should be 5: {text}");
}

#[test]
fn missing_file_exits_one() {
    let out = run(&["cohom", "/nonexistent/no.ideal"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8(out.stderr).unwrap().is_empty());
}

#[test]
fn parse_errors_carry_line_numbers() {
    let f = fixture("bad.ideal", "ring x y over QQ\nideal I = x + 1\n");
    let out = run(&["cohom", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains('2') && err.contains("inhomogeneous"), "{err}");
}

#[test]
fn json_reports_are_byte_deterministic() {
    let f = fixture("tc.ideal", CUBIC);
    let path = f.to_str().unwrap();
    for cmd in ["cohom", "criterion", "tangent", "degenerate", "stratify"] {
        let a = run(&[cmd, path, "--json"]);
        let b = run(&[cmd, path, "--json"]);
        assert_eq!(a.stdout, b.stdout, "{cmd} output differs between runs");
        assert_eq!(a.status.code(), b.status.code());
        let parsed: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(parsed["meta"]["tool"], "fiberfull");
        assert_eq!(parsed["meta"]["command"], cmd);
        assert!(parsed["result"].is_object(), "{cmd} result missing");
    }
}

#[test]
fn degenerate_reports_equal_tables_for_the_cubic() {
    let f = fixture("tc2.ideal", CUBIC);
    let out = run(&["degenerate", f.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["tables_equal"], true);
    assert_eq!(v["result"]["semicontinuity_ok"], true);
    assert_eq!(v["result"]["criterion"]["pass"], true);
}

#[test]
fn crosscheck_squarefree_agrees() {
    let f = fixture("ex5b.ideal", EX5);
    let out = run(&["crosscheck", f.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["equal"], true);
}

#[test]
fn crosscheck_rejects_non_squarefree() {
    let f = fixture("i1b.ideal", I1);
    let out = run(&["crosscheck", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn window_flag_controls_the_table() {
    let f = fixture("i1c.ideal", I1);
    let out = run(&["cohom", f.to_str().unwrap(), "--json", "--window", "-2:2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["window"][0], -2);
    assert_eq!(v["result"]["window"][1], 2);
    // h0(1) = 2 sits at offset 3 in the window
    assert_eq!(v["result"]["rows"][0][3], "2");
    assert_eq!(v["result"]["rows"][1][0], "1");
}

#[test]
fn field_and_order_overrides() {
    let f = fixture("tc3.ideal", CUBIC);
    let out = run(&["criterion", f.to_str().unwrap(), "--json", "--field", "gf:101", "--order", "lex"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["input"]["field"], "GF(101)");
    assert_eq!(v["input"]["order"], "lex");
    // under lex the initial ideal of the cubic differs from grevlex
    let grev = run(&["criterion", f.to_str().unwrap(), "--json"]);
    let vg: serde_json::Value = serde_json::from_slice(&grev.stdout).unwrap();
    assert_ne!(v["result"]["ideal_tested"], vg["result"]["ideal_tested"]);
}

#[test]
fn tangent_anchor_dimensions() {
    let f = fixture(
        "anchor.ideal",
        "ring x y z w over QQ\nideal A = x^3, x*z, y*z, z^2\n",
    );
    let out = run(&["tangent", f.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["dim_hilb"], 16);
    assert_eq!(v["result"]["dim_fib"], 15);
}
