use std::process::Command;

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use ratinterp_cli::expr::{parse_expression, Expr};
use ratinterp_cli::run;

fn run_str(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["ratinterp"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ast() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..50).prop_map(|n| Expr::Num(BigInt::from(n))),
        prop::sample::select(vec!["x", "q", "a", "beta", "x_1", "c_2", "b_3", "z"]).prop_map(|s| Expr::Sym(s.to_string())),
    ];
    leaf.prop_recursive(4, 32, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner.clone(), -3i64..=3).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
            (inner.clone(), inner, -2i64..=3).prop_map(|(a, q, n)| Expr::Poch(Box::new(a), Box::new(q), n)),
        ]
    })
}

#[test]
fn parse_print_round_trip() {
    let mut runner = TestRunner::new(Config { cases: 200, ..Config::default() });
    runner
        .run(&ast(), |e| {
            let text = e.to_string();
            let back = parse_expression(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
            prop_assert_eq!(back, e, "{}", text);
            Ok(())
        })
        .unwrap();
}

#[test]
fn lemma1_command() {
    assert_eq!(run_str(&["lemma1", "--n", "3", "--i", "2"]), (0, "0\n".into(), String::new()));
    assert_eq!(run_str(&["lemma1", "--n", "3", "--i", "3"]).1, "1\n");
}

#[test]
fn coeffs_command() {
    let (code, out, _) = run_str(&[
        "coeffs", "--f", "(1-u*x)/(1-v*x)", "--x-family", "geom:1,q", "--c-family", "geom:a*p,p", "--depth", "3",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "A_0 = (u - 1)/((v - 1))");
    assert!(lines[3].starts_with("A_3 = "));

    let (code, out, _) = run_str(&["coeffs", "--f", "x^2", "--c-family", "const:0", "--depth", "3", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[1]["value"], "x_1 + x_2");
    assert_eq!(v[2]["value"], "1");
    assert_eq!(v[3]["value"], "0");
}

#[test]
fn term_command() {
    let (code, out, _) = run_str(&["term", "--n", "1", "--x-family", "geom:a*q,q", "--c-family", "geom:1,q"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(a*q - x)/((x - 1))");
}

#[test]
fn verify_json_report() {
    let (code, out, _) = run_str(&["verify", "sylvester", "--order", "15", "--beta", "1/7", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
    keys.sort();
    assert_eq!(keys, ["identity_name", "mode", "order_or_n", "parameters", "status", "witness"]);
    assert_eq!(v["identity_name"], "sylvester");
    assert_eq!(v["mode"], "symbolic_q");
    assert_eq!(v["order_or_n"], 15);
    assert_eq!(v["status"], "verified");
    assert!(v["parameters"].is_object());
    assert!(v["witness"].is_null());
}

#[test]
fn verify_modes() {
    assert_eq!(run_str(&["verify", "andrews", "--n", "2", "--mode", "points", "--samples", "3"]).0, 0);
    assert_eq!(run_str(&["verify", "q_vandermonde", "--n", "3", "--mode", "symbolic"]).0, 0);
    assert_eq!(run_str(&["verify", "jackson", "--order", "6", "--beta", "symbolic"]).0, 0);
}

#[test]
fn same_seed_same_output() {
    let args = ["verify", "gosper", "--n", "3", "--samples", "4", "--seed", "99", "--json"];
    let first = run_str(&args);
    assert_eq!(first.0, 0);
    assert_eq!(first, run_str(&args));
}

#[test]
fn seed_from_environment() {
    let bin = env!("CARGO_BIN_EXE_ratinterp");
    let from_env = Command::new(bin)
        .args(["verify", "sears", "--n", "2", "--samples", "3", "--json"])
        .env("RATINTERP_SEED", "17")
        .output()
        .unwrap();
    let from_flag = Command::new(bin)
        .args(["verify", "sears", "--n", "2", "--samples", "3", "--seed", "17", "--json"])
        .env_remove("RATINTERP_SEED")
        .output()
        .unwrap();
    assert_eq!(from_env.status.code(), Some(0));
    assert_eq!(from_env.stdout, from_flag.stdout);
    let v: serde_json::Value = serde_json::from_slice(&from_env.stdout).unwrap();
    assert_eq!(v["parameters"]["seed"], "17");
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, err) = run_str(&["coeffs", "--f", "1 + foo"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column 5"), "{err}");
    assert_eq!(run_str(&["coeffs", "--f", "x", "--x-family", "geom:1"]).0, 2);
    assert_eq!(run_str(&["verify", "nope"]).0, 2);
    assert_eq!(run_str(&["frobnicate"]).0, 2);
    assert_eq!(run_str(&["verify", "jackson", "--beta", "0.5"]).0, 2);
    assert_eq!(run_str(&["--help"]).0, 0);
}
