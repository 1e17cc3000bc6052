use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use strictpat::patterns::parse_pattern;
use strictpat::syntax::{parse_params, parse_signature, parse_type};

fn data(file: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(file)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strictpat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect()
}

fn pattern_keys(lines: &[String], sig_text: &str, ctx: &str, ty: &str) -> BTreeSet<String> {
    let sig = parse_signature(sig_text).unwrap();
    let psi = parse_params(ctx, &sig).unwrap();
    let ty = parse_type(ty, &sig).unwrap();
    lines
        .iter()
        .map(|l| parse_pattern(l, &psi, &sig, &ty).unwrap().key())
        .collect()
}

const LAM: &str = "exp : type. lam : (exp ->u exp) ->1 exp. app : exp ->1 exp ->1 exp.";

#[test]
fn complement_of_beta_redex_pattern() {
    let out = run(&[
        "not",
        "--sig",
        &data("lam.sig"),
        "--type",
        "exp",
        "app @1 (lam @1 (\\x^u:exp. E[x^u])) @1 F[]",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 2);
    let mut sorted = lines.clone();
    sorted.sort();
    assert_eq!(lines, sorted);
    let expected: Vec<String> = [
        "lam @1 (\\x^u:exp. H[x^u])",
        "app @1 (app @1 H1[] @1 H2[]) @1 H3[]",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    assert_eq!(
        pattern_keys(&lines, LAM, "", "exp"),
        pattern_keys(&expected, LAM, "", "exp")
    );
}

#[test]
fn enumeration_prefix() {
    let out = run(&[
        "enum",
        "--sig",
        &data("ab.sig"),
        "--ctx",
        "x:a",
        "--type",
        "a",
        "--depth",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let got: BTreeSet<String> = stdout_lines(&out).into_iter().collect();
    let want: BTreeSet<String> = ["b", "x", "c @u b", "c @u x"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(got, want);
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    let lines = stdout_lines(&out);
    assert_eq!(out.status.code(), Some(0), "{lines:#?}");
    assert!(lines.last().unwrap().ends_with(", 0 failed"));
    assert!(lines.iter().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn negated_program_has_six_clauses() {
    let out = run(&[
        "negate",
        "--sig",
        &data("lam.sig"),
        "--type",
        "exp",
        "--program",
        &data("isredx.prog"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 6);
    for (i, l) in lines.iter().enumerate() {
        assert!(l.starts_with(&format!("nb{} : non_isredx (", i + 1)), "{l}");
    }
}

#[test]
fn membership_exit_codes() {
    let member = |t: &str| {
        run(&[
            "member",
            "--sig",
            &data("ab.sig"),
            "--ctx",
            "x:a",
            "--type",
            "a",
            t,
            "E[x^0]",
        ])
        .status
        .code()
    };
    assert_eq!(member("c @u b"), Some(0));
    assert_eq!(member("c @u x"), Some(1));
}

#[test]
fn typing_failure_names_kind_and_variable() {
    let out = run(&[
        "check",
        "--sig",
        &data("ab.sig"),
        "--gamma",
        "y:a ->u a",
        "--delta",
        "x:a",
        "--type",
        "a",
        "y @u x",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let line = &stdout_lines(&out)[0];
    assert!(line.starts_with("StrictVarUnused `x`"), "{line}");
    let ok = run(&[
        "check",
        "--sig",
        &data("ab.sig"),
        "--gamma",
        "y:a ->u a, x:a",
        "--type",
        "a",
        "y @u x",
    ]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn bounded_equality_of_set_files() {
    let eq = |l: &str, r: &str| {
        run(&[
            "eq",
            "--sig",
            &data("ab_strict.sig"),
            "--depth",
            "5",
            &data(l),
            &data(r),
        ])
        .status
        .code()
    };
    assert_eq!(eq("strict_y.set", "strict_y.set"), Some(0));
    assert_eq!(eq("strict_y.set", "not_strict_y.set"), Some(1));
}

#[test]
fn json_output_is_a_string_array() {
    let out = run(&[
        "--format",
        "json",
        "not",
        "--sig",
        &data("ab_strict.sig"),
        "--ctx",
        "x:a, y:a",
        "--type",
        "a",
        "--exclusive",
        "E[x^0, y^1]",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Vec<String> = serde_json::from_slice(&out.stdout).unwrap();
    let expected: Vec<String> = ["F[x^1, y^1]", "G[x^1, y^0]", "H[x^0, y^0]"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let sig = "a : type. b : a. c : a ->1 a.";
    assert_eq!(
        pattern_keys(&v, sig, "x:a, y:a", "a"),
        pattern_keys(&expected, sig, "x:a, y:a", "a")
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "negate",
        "--sig",
        &data("lam.sig"),
        "--type",
        "exp",
        "--program",
        &data("isredx.prog"),
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn errors_exit_with_two() {
    let missing = run(&["not", "--sig", "no-such-file.sig", "--type", "a", "E[]"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(!missing.stderr.is_empty());
    let non_simple = run(&[
        "not",
        "--sig",
        &data("ab.sig"),
        "--ctx",
        "x:a",
        "--type",
        "a",
        "E[x^0]",
    ]);
    assert_eq!(non_simple.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&non_simple.stderr).contains("not simple"));
    let usage = run(&[
        "enum",
        "--sig",
        &data("ab.sig"),
        "--type",
        "a",
        "--depth",
        "0",
    ]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn embedding_of_k_combinator() {
    let out = run(&[
        "embed",
        "--sig",
        &data("lam_plain.sig"),
        "--type",
        "exp",
        "lam (\\x:exp. lam (\\y:exp. x))",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_lines(&out),
        vec!["lam @1 (\\x^u:exp. lam @1 (\\y^u:exp. x)) : exp"]
    );
}

#[test]
fn meet_without_solution_prints_nothing() {
    let out = run(&[
        "meet",
        "--sig",
        &data("lam.sig"),
        "--type",
        "exp",
        "lam @1 (\\x^u:exp. E[x^u])",
        "app @1 F[] @1 G[]",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}
