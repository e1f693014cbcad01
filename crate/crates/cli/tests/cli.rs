use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use vanishlab::record::{parse_records, render};

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn run_with_stdin(args: &[&str], stdin: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_vanishlab"))
        .args(args)
        .env_remove("VANISHLAB_HORIZON")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    let out = child.wait_with_output().unwrap();
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with_stdin(args, None)
}

/// Compares against tests/golden/<name>; UPDATE_GOLDEN=1 rewrites the file.
fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

const GOLDEN: &[(&str, &[&str], i32)] = &[
    ("vanish.txt", &["vanish", "--vars", "x,y", "--op", "dx*dy", "--p", "x^2+y^2", "-M", "3"], 1),
    (
        "vanish_g.rec",
        &["vanish", "--op", "dx", "--p", "y", "--g", "x^2*y", "-M", "4", "--format", "structured"],
        0,
    ),
    ("ddv.rec", &["counterexample", "ddv", "-M", "5", "-D", "12", "--format", "structured"], 0),
    ("dk_counterexample.txt", &["counterexample", "dk", "-M", "8", "-D", "12"], 0),
    (
        "polytope.rec",
        &["polytope", "--vars", "x,y", "--sigma", "(-2,1);(1,-2)", "--beta", "(3,3)", "--format", "structured"],
        0,
    ),
    ("polytope_witness.txt", &["polytope", "--sigma", "(-1,1);(1,-1)"], 1),
    ("contains.rec", &["polytope", "--sigma", "(0,0);(2,0);(0,2)", "--point", "(1/2,1)", "--format", "structured"], 0),
    ("density.rec", &["density", "--p", "x+y^3", "--u", "(1/2,3/2)", "-M", "3", "--format", "structured"], 0),
    ("dk.rec", &["dk", "--f", "x^-1+x", "-M", "4", "--format", "structured"], 1),
    ("one_var.rec", &["case", "one-var", "--op", "dx^3", "--p", "x^2", "--g", "x", "-M", "5", "--format", "structured"], 0),
    ("phi.txt", &["case", "phi", "--phi", "y^2", "--f", "y", "--g", "x*y"], 0),
    ("monomial.rec", &["case", "monomial", "--op", "dx*dy", "--p", "x^2", "-M", "4", "--format", "structured"], 0),
    (
        "two_monomial.rec",
        &["case", "two-monomial", "--op", "dx^2+dy", "--p", "x", "--g", "y", "-M", "5", "--format", "structured"],
        0,
    ),
    ("two_monomial_fails.txt", &["case", "two-monomial", "--op", "dx^2+dy", "--p", "x^2+y^2", "-M", "3"], 1),
];

#[test]
fn golden_outputs_and_exit_codes() {
    for (name, args, code) in GOLDEN {
        let r = run(args);
        assert_eq!(r.code, *code, "{name}: stderr={}", r.stderr);
        golden(name, &r.stdout);
    }
}

#[test]
fn structured_output_is_deterministic_and_round_trips() {
    for (name, args, _) in GOLDEN.iter().filter(|(n, _, _)| n.ends_with(".rec")) {
        let a = run(args).stdout;
        assert_eq!(a, run(args).stdout, "{name}");
        let records = parse_records(&a).unwrap();
        assert_eq!(render(&records), a, "{name}");
    }
}

#[test]
fn worked_values() {
    let r = run(&["vanish", "--vars", "x,y", "--op", "dx*dy", "--p", "x^2+y^2", "-M", "3", "--format", "structured"]);
    let recs = parse_records(&r.stdout).unwrap();
    assert_eq!(recs[0].get("plain"), Some("fails at m=2"));
    assert_eq!(recs[0].get("plain-residual"), Some("8"));

    let r = run(&["polytope", "--sigma", "(-2,1);(1,-2)", "--beta", "(3,3)", "--format", "structured"]);
    let recs = parse_records(&r.stdout).unwrap();
    assert_eq!(recs[0].get("c"), Some("(1/2,1/2)"));
    assert_eq!(recs[0].get("delta"), Some("1/2"));
    assert_eq!(recs[1].get("N"), Some("7"));
}

#[test]
fn stdin_input() {
    let r = run_with_stdin(&["vanish", "--op", "dx*dy", "--p", "-", "-M", "3"], Some("x^2+y^2\n"));
    assert_eq!(r.code, 1);
    assert_eq!(r.stdout, run(&["vanish", "--op", "dx*dy", "--p", "x^2+y^2", "-M", "3"]).stdout);
    let r = run_with_stdin(&["vanish", "--op", "-", "--p", "-"], Some("dx"));
    assert_eq!(r.code, 3);
}

#[test]
fn horizon_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_vanishlab"))
        .args(["vanish", "--op", "dx", "--p", "x", "--format", "structured"])
        .env("VANISHLAB_HORIZON", "2")
        .output()
        .unwrap();
    let recs = parse_records(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(recs[0].get("horizon"), Some("2"));
    assert_eq!(recs.len(), 3);
}

#[test]
fn usage_and_parse_errors() {
    for args in [
        &["bogus"][..],
        &["vanish", "--op", "dz", "--p", "x"],
        &["vanish", "--op", "dx", "--p", "x+"],
        &["vanish", "--vars", "x,x", "--op", "dx", "--p", "x"],
        &["counterexample", "ddv", "-M", "5", "-D", "6"],
        &["vanish", "--op", "dx", "--p", "x", "-M", "0"],
        &["polytope", "--sigma", "(1,2,3)"],
    ] {
        let r = run(args);
        assert_eq!(r.code, 3, "{args:?}");
        assert!(!r.stderr.is_empty());
    }
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn inconclusive_exit() {
    let r = run(&["vanish", "--op", "dx", "--p", "y", "--g", "x^5", "-M", "3"]);
    assert_eq!(r.code, 2);
    let r = run(&["density", "--p", "x^2+y^2", "--u", "(1,1)", "-M", "1"]);
    assert_eq!(r.code, 2);
    let r = run(&["density", "--p", "x+y", "--u", "(1,2)", "-M", "3"]);
    assert_eq!(r.code, 3);
}
