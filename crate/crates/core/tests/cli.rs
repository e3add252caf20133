use std::process::{Command, Output};

fn pbwcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbwcalc")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn normal_form_golden() {
    let out = pbwcalc(&["nf", "-a", "heisenberg:1", "-c", "IV", "p1*d(q1)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("nf_heisenberg_iv.txt"));
}

#[test]
fn check_goldens_and_exit_codes() {
    let out = pbwcalc(&["check", "-c", "witt:mu", "--window", "-20..20"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("check_witt_mu.txt"));
    let out = pbwcalc(&["check", "-c", "sl2:half-c"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), golden("check_sl2_half_c.txt"));
}

#[test]
fn differential_and_partials() {
    let out = pbwcalc(&["d", "-a", "heisenberg:1", "-c", "IV", "p1*q1"]);
    assert_eq!(stdout(&out), "y[2]*x[1] + y[1]*x[2] + 1/2*y[0]\n");
    let out = pbwcalc(&["partials", "-a", "heisenberg:1", "-c", "IV", "p1*q1"]);
    assert_eq!(stdout(&out), "D[c] = 1/2\nD[p1] = x[2]\nD[q1] = x[1]\n");
    let out = pbwcalc(&["partials", "-a", "heisenberg:1", "-c", "IV", "d(p1)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn normal_form_does_not_need_consistency() {
    let out = pbwcalc(&["nf", "-a", "virasoro", "-c", "mu-central", "x[2]*y[-2]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "y[-2]*x[2] + (mu - 2)*y[0] - 1/4*y[t]\n");
    let out = pbwcalc(&["d", "-a", "virasoro", "-c", "mu-central", "x[2]"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_are_usage_errors() {
    let out = pbwcalc(&["nf", "-a", "sl2", "-c", "half-c", "x[1]**2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("offset 5"));
    assert_eq!(pbwcalc(&["nf", "-a", "sl2", "-c", "half-c", "x[9]"]).status.code(), Some(2));
    assert_eq!(pbwcalc(&["check", "-c", "sl2:nope"]).status.code(), Some(2));
    assert_eq!(pbwcalc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn representation_report() {
    let out = pbwcalc(&["rep", "-c", "solvable2:iv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("rho(x) =\n[-2   0]\n[ 1   0]\n"));
    assert!(text.contains("representation: ok\ncocycle: ok\n"));
    assert_eq!(pbwcalc(&["rep", "-c", "sl2:half-c"]).status.code(), Some(1));
}

#[test]
fn transform_checks_automorphisms() {
    let out = pbwcalc(&["transform", "-c", "solvable2:A1", "--tau", &data("tau_a1.json"), "--check-auto"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("A[x, x] = (alpha)*x\n"), "{text}");
    let out = pbwcalc(&["transform", "-c", "solvable2:i", "--tau", &data("tau_swap.json"), "--check-auto"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn family_entry_points() {
    let list = stdout(&pbwcalc(&["family", "list"]));
    assert!(list.lines().any(|l| l == "heisenberg:1:IV"));
    assert_eq!(pbwcalc(&["family", "verify", "solvable2:iv"]).status.code(), Some(0));
    assert_eq!(pbwcalc(&["family", "verify", "virasoro:mu-central"]).status.code(), Some(1));
    assert_eq!(pbwcalc(&["family", "verify", "nope"]).status.code(), Some(2));
}

#[test]
fn refutation_report_is_json() {
    let out = pbwcalc(&["refute", "-a", "sl2", "--samples", "40", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let report: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(report["samples"], 40);
    assert_eq!(report["violations"], 40);
    assert!(report["witness"]["residual"].is_string());
    assert_eq!(text, stdout(&pbwcalc(&["refute", "-a", "sl2", "--samples", "40", "--seed", "7"])));
    assert_eq!(pbwcalc(&["refute", "-a", "heisenberg:1"]).status.code(), Some(2));
}

#[test]
fn refutation_with_certificate() {
    let out = pbwcalc(&["refute", "-a", "sl2", "--samples", "5", "--certificate"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("certificate: found, replays to 1\n"));
}

#[test]
fn catalog_lists_aliases() {
    let text = stdout(&pbwcalc(&["catalog", "list"]));
    assert!(text.contains("sl2  [h=0 e=1 f=2]"));
    assert!(text.contains("heisenberg:N  [c=0 p1=1 q1=2]"));
    assert!(text.contains("solvable2  [x=0 y=1]"));
}
