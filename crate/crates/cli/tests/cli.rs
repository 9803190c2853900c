//! End-to-end tests of the workbench surface: spec'd outputs, exit codes,
//! JSON shape, stdin payloads, and byte-for-byte determinism.

use as2trees_cli::{run, RunOutput};

fn go(args: &[&str]) -> RunOutput {
    let argv: Vec<String> =
        std::iter::once("as2trees").chain(args.iter().copied()).map(String::from).collect();
    run(&argv, None)
}

fn go_stdin(args: &[&str], stdin: &str) -> RunOutput {
    let argv: Vec<String> =
        std::iter::once("as2trees").chain(args.iter().copied()).map(String::from).collect();
    run(&argv, Some(stdin))
}

#[test]
fn mul_star1_example() {
    let out = go(&["mul", "--op", "1", "--lhs", "(a)", "--rhs", "(b)"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "1 (a b) + 1 (b(a))\n");
}

#[test]
fn mul_star2_and_unital() {
    let out = go(&["mul", "--op", "2", "--lhs", "(a b)", "--rhs", "(c)"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "1 (a b c)\n"));
    let out = go(&["mul", "--op", "2", "--lhs", "()", "--rhs", "(a)", "--unital"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "1 (a)\n"));
    // strict mode rejects the degree-0 operand
    let out = go(&["mul", "--op", "2", "--lhs", "()", "--rhs", "(a)"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("degree-0"));
}

#[test]
fn mul_accepts_lincomb_payloads() {
    let out = go(&["mul", "--op", "1", "--lhs", "1 (a) - 1 (b)", "--rhs", "(c)"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "1 (a c) - 1 (b c) + 1 (c(a)) - 1 (c(b))\n");
}

#[test]
fn count_trees_example() {
    let out = go(&["count-trees", "--degree", "3", "--labels", "1"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "5\n"));
    // formula path beyond the enumeration cross-check range
    let out = go(&["count-trees", "--degree", "12", "--labels", "2"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.trim(), (208012u64 * 4096).to_string());
}

#[test]
fn enum_trees_canonical_order() {
    let out = go(&["enum-trees", "--degree", "2", "--alphabet", "x"]);
    assert_eq!(out.stdout, "(x x)\n(x(x))\n");
}

#[test]
fn coproduct_example() {
    let out = go(&["coproduct", "--tree", "(a)"]);
    assert_eq!(out.stdout, "1 () (x) (a) + 1 (a) (x) ()\n");
}

#[test]
fn nf_example() {
    let out = go(&["nf", "--expr", "((a *2 b) *1 c)"]);
    assert_eq!(
        out.stdout,
        "- 1 ((a *1 b) *2 c) + 1 (a *1 (b *2 c)) + 1 (a *2 (b *1 c))\n"
    );
}

#[test]
fn basis_modes() {
    let out = go(&["basis", "--multilinear", "--alphabet", "a,b"]);
    assert_eq!(out.stdout, "(a *1 b)\n(b *1 a)\n(a *2 b)\n(b *2 a)\n");
    let out = go(&["basis", "--words", "--degree", "2", "--alphabet", "x"]);
    assert_eq!(out.stdout, "(x *1 x)\n(x *2 x)\n");
    let out = go(&["basis", "--words", "--alphabet", "x"]);
    assert_eq!(out.code, 2, "--words without --degree is a usage error");
}

#[test]
fn to_basis_examples() {
    let out = go(&["to-basis", "--tree", "(a b)"]);
    assert_eq!(out.stdout, "1 (a *2 b)\n");
    let out = go(&["to-basis", "--tree", "(b(a))"]);
    assert_eq!(out.stdout, "1 (a *1 b) - 1 (a *2 b)\n");
}

#[test]
fn decompose_examples_and_fuel() {
    let out = go(&["decompose", "--tree", "(a b)"]);
    assert_eq!(out.stdout, "1 (a *2 b)\n");
    let out = go(&["decompose", "--tree", "(a b)", "--fuel", "1"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("fuel"));
}

#[test]
fn stdin_payload() {
    let out = go_stdin(&["nf", "--expr", "-"], "((a *1 b) *1 c)");
    assert_eq!(out.stdout, "1 (a *1 (b *1 c))\n");
}

#[test]
fn parse_errors_exit_2() {
    let out = go(&["mul", "--op", "1", "--lhs", "(a", "--rhs", "(b)"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("parse error"));
    let out = go(&["mul", "--op", "3", "--lhs", "(a)", "--rhs", "(b)"]);
    assert_eq!(out.code, 2);
    let out = go(&["enum-trees", "--degree", "1", "--alphabet", "a,a"]);
    assert_eq!(out.code, 2);
}

#[test]
fn json_mode_emits_single_documents() {
    let out = go(&["mul", "--op", "1", "--lhs", "(a)", "--rhs", "(b)", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"terms": [
            {"coeff": "1", "tree": "(a b)"},
            {"coeff": "1", "tree": "(b(a))"}
        ]})
    );
    let out = go(&["rank", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["check"], "multilinear_rank");
    assert_eq!(v["rank"], 4);
    assert_eq!(v["pass"], true);
    let out = go(&["series", "--check", "funcas", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn series_checks_pass_and_fail_codes() {
    for check in ["funcas", "narayana", "koszul", "beta", "duality", "sl2", "mutation"] {
        let out = go(&["series", "--check", check]);
        assert_eq!(out.code, 0, "series --check {check}: {}", out.stdout);
        assert!(out.stdout.contains("pass"));
    }
}

#[test]
fn verify_products_suite() {
    let out = go(&["verify", "--suite", "products"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("criterion_02_laws"));
    assert!(out.stdout.contains("criterion_11_pencil"));
    assert!(out.stdout.ends_with("verify: 2/2 checks passed\n"));
}

#[test]
fn verify_all_suites_green() {
    let out = go(&["verify", "--suite", "all"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.ends_with("verify: 11/11 checks passed\n"));
    let unknown = go(&["verify", "--suite", "nope"]);
    assert_eq!(unknown.code, 2);
}

#[test]
fn verify_named_suites_green() {
    for (suite, checks) in [("basis", 2), ("iso", 4), ("series", 2), ("hopf", 1)] {
        let out = go(&["verify", "--suite", suite]);
        assert_eq!(out.code, 0, "suite {suite}: {}", out.stdout);
        assert!(out.stdout.ends_with(&format!("verify: {checks}/{checks} checks passed\n")));
    }
}

#[test]
fn output_is_deterministic() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["count-trees", "--degree", "4", "--labels", "2"],
        vec!["enum-trees", "--degree", "3", "--labels", "1"],
        vec!["mul", "--op", "1", "--lhs", "(a b)", "--rhs", "(c)"],
        vec!["mul", "--op", "2", "--lhs", "(a)", "--rhs", "(b(c))"],
        vec!["coproduct", "--tree", "(a b c)"],
        vec!["nf", "--expr", "(((a *2 b) *1 a) *2 b)"],
        vec!["basis", "--words", "--degree", "3", "--labels", "2"],
        vec!["to-basis", "--tree", "(a(b))"],
        vec!["decompose", "--tree", "(b(a))"],
        vec!["rank", "--n", "2"],
        vec!["series", "--check", "narayana", "--order", "9"],
        vec!["verify", "--suite", "series", "--format", "json"],
    ];
    for args in cases {
        let first = go(&args);
        let second = go(&args);
        assert_eq!(first.code, second.code, "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.stderr, second.stderr, "{args:?}");
    }
}
