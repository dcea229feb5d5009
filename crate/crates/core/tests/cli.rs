use std::path::PathBuf;

use serde_json::Value;
use wittkit::cli::{run, Outcome};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn wittkit(args: &[&str]) -> (Outcome, Value) {
    let gamma = data("z.json");
    let mut full = vec!["wittkit", "--gamma", gamma.as_str()];
    full.extend_from_slice(args);
    let out = run(full);
    let report = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out, report)
}

#[test]
fn eval_prints_canonical_form() {
    let (out, r) = wittkit(&["eval", "[L(1,2), L(3,1)]"]);
    assert_eq!(out.code, 0);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["result"]["element"]["text"], "2*L(4,3) - L(4,4)");
    let (_, r) = wittkit(&["eval", "--rule", "hat", "[L(2,0), L(-2,0)]"]);
    assert_eq!(r["result"]["element"]["text"], "-4*L(0,0) + 1/2*C");
}

#[test]
fn syntax_errors_exit_two_with_position() {
    let (out, r) = wittkit(&["eval", "[L(1,0)"]);
    assert_eq!(out.code, 2);
    assert_eq!(r["status"], "input_error");
    assert_eq!(r["error"]["kind"], "SyntaxError");
    assert_eq!(r["error"]["column"], 8);
    let (out, r) = wittkit(&["eval", "C"]);
    assert_eq!(
        (out.code, r["error"]["kind"].as_str()),
        (2, Some("CentralTerm"))
    );
}

#[test]
fn missing_gamma_is_an_input_error() {
    let out = run(["wittkit", "eval", "L(0,0)"]);
    if std::env::var_os("WITTKIT_GAMMA").is_none() {
        assert_eq!(out.code, 2);
        let r: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(r["error"]["kind"], "InvalidGamma");
        assert!(r["gamma_fingerprint"].is_null());
    }
    let out = run(["wittkit", "eval"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty() && !out.stderr.is_empty());
}

#[test]
fn jacobi_and_fit_reports() {
    let (out, r) = wittkit(&["jacobi", "--window", "2", "2", "--rule", "witt"]);
    assert_eq!(out.code, 0);
    assert_eq!(r["result"]["residual"]["nonzero"], 0);

    let input = data("cocycle_canonical.json");
    let (out, r) = wittkit(&["cocycle", "fit", "--input", &input, "--window", "3", "2"]);
    assert_eq!(out.code, 0);
    assert_eq!(r["result"]["feasible"], false);
    assert_eq!(r["result"]["certificate"].as_array().map(Vec::len), Some(2));
    let (out, r) = wittkit(&[
        "cocycle", "fit", "--input", &input, "--window", "3", "2", "--expect", "feasible",
    ]);
    assert_eq!(
        (out.code, r["status"].as_str()),
        (1, Some("verification_failed"))
    );
}

#[test]
fn normalize_mixed_cocycle() {
    let (out, r) = wittkit(&[
        "cocycle",
        "normalize",
        "--input",
        &data("cocycle_mixed.json"),
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(r["result"]["c"], "3");
    assert_eq!(r["result"]["success"], true);
}

#[test]
fn automorphism_commands() {
    let aut = data("aut_z.json");
    let (out, r) = wittkit(&["aut", "apply", "--input", &aut, "--x", "L(2,1)"]);
    assert_eq!(out.code, 0);
    assert_eq!(r["result"]["image"]["text"], "4*L(-2,1)");
    let (out, r) = wittkit(&["aut", "verify", "--input", &aut, "--window", "2", "2"]);
    assert_eq!(out.code, 0);
    assert_eq!(r["result"]["rigidity"], true);
    let (_, r) = wittkit(&["aut", "compose", "--input", &data("aut_pair_z.json")]);
    assert_eq!(r["result"]["composite"]["tau"]["g1"], "-2/3");
    let (out, _) = wittkit(&["aut", "apply", "--input", &aut]);
    assert_eq!(out.code, 2);
}

#[test]
fn derivation_commands() {
    let input = data("derivation_z.json");
    let (out, r) = wittkit(&["derive", "decompose", "--input", &input, "--order", "4"]);
    assert_eq!(out.code, 0);
    assert_eq!(r["result"]["phi"]["g1"], "3");
    let (out, r) = wittkit(&["derive", "decompose", "--input", &input, "--order", "1"]);
    assert_eq!(
        (out.code, r["error"]["kind"].as_str()),
        (2, Some("TruncationTooShallow"))
    );
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let args = [
        "ideal",
        "--gen",
        "L(2,1) + L(-1,1) - L(0,3)",
        "--window",
        "2",
        "3",
    ];
    let (a, b) = (wittkit(&args).1, wittkit(&args).1);
    assert_eq!(strip(a.clone()), strip(b));
    assert_eq!(a["result"]["classified_as"], "W^1");
}
