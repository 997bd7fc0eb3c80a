use std::process::Command;

use semigold::cli::{run, CliOutput};
use serde_json::Value;

fn sg(args: &[&str]) -> CliOutput {
    run(std::iter::once("semigold").chain(args.iter().copied()))
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../docs/schema.json"
    ))
    .unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = sg(&a);
    let v: Value = serde_json::from_str(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", out.stdout));
    let errors: Vec<String> = validator().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(
        errors.is_empty(),
        "{args:?} violates the schema: {errors:?}\n{v:#}"
    );
    (out.code, v)
}

const GEOMETRIC: &str = "tail: const(start=0, d=1, coeffs=[1])";
const TWOS: &str = "head: 2 + 2x; tail: affine(start=3, g0=2, a=1, coeffs=[2])";
const TRIANGULAR: &str = "tail: affine(start=0, g0=1, a=1, coeffs=[1])";

#[test]
fn decompose_linear() {
    let (code, v) = json(&["decompose", "--ring", "n0", "2x+3"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "SumOfTwo");
    let texts: Vec<&str> = v["summands"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["text"].as_str().unwrap())
        .collect();
    assert_eq!(texts, ["x + 2", "x + 1"]);
}

#[test]
fn sqrt2_has_no_split() {
    let (code, v) = json(&[
        "enumerate",
        "--ring",
        "n0sqrt2",
        "--parts",
        "2",
        "r2 x^2 + r2 x + r2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 0);
}

#[test]
fn verify_passes_and_ignores_jobs() {
    let one = sg(&["verify", "--jobs", "1"]);
    let four = sg(&["verify", "--jobs", "4"]);
    assert_eq!(one.code, 0, "{}", one.stdout);
    assert_eq!(one.stdout, four.stdout);
    let (code, v) = json(&[
        "verify",
        "--max-deg",
        "3",
        "--max-coeff",
        "2",
        "--only",
        "1,2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
}

#[test]
fn every_command_validates() {
    let cases: &[(&[&str], i32)] = &[
        (&["decompose", "x^2 + x + 1"], 0),
        (&["decompose", "--ring", "q+", "1/2x^2 + 3x + 5/3"], 0),
        (&["decompose", "--ring", "two-thirds", "x + 1"], 0),
        (&["decompose", "--ring", "multi:2", "x + y + 3xy + 2"], 0),
        (&["decompose", "--vars", "s,t", "s + t + 3st + 2"], 0),
        (&["decompose", "--monomials", "x + 4"], 0),
        (&["certify", "x^3 + x + 1"], 0),
        (&["certify", "(x + 1)(x + 2)"], 0),
        (&["factor", "x^2 + 3x + 2"], 0),
        (&["factor", "x^2 + x + 1"], 0),
        (&["enumerate", "--parts", "3", "3x^2 + 3x + 3"], 0),
        (&["series-decompose", GEOMETRIC], 0),
        (&["series-decompose", TWOS, "--order", "60"], 0),
        (&["series-decompose", TRIANGULAR], 0),
        (&["series-decompose", "head: 1 + x; tail: none"], 0),
        (&["series-family", GEOMETRIC, "--subset", "ap:2:2"], 0),
        (&["series-family", TWOS, "--subset", "bits:5"], 0),
        (&["probe", GEOMETRIC], 0),
        (&["probe", TRIANGULAR], 0),
        (&["probe", TWOS, "--budget", "1"], 3),
        (&["decompose", "x +"], 2),
        (&["decompose", "--ring", "z9", "x"], 2),
        (&["series-family", GEOMETRIC, "--subset", "ap:0:1"], 2),
        (&["series-decompose", "--ring", "q+", GEOMETRIC], 2),
        (&["frobnicate"], 2),
    ];
    for (args, code) in cases {
        let (got, _) = json(args);
        assert_eq!(got, *code, "{args:?}");
    }
}

#[test]
fn text_and_json_agree() {
    for args in [
        &["decompose", "x^2 + x + 1"][..],
        &["decompose", "3x^2 + 2x + 2"],
        &["decompose", "x + 1"],
        &["series-decompose", TWOS],
        &["series-decompose", GEOMETRIC],
    ] {
        let text = sg(args).stdout;
        let (_, v) = json(args);
        let kind = v
            .get("kind")
            .or_else(|| v.get("case"))
            .unwrap()
            .as_str()
            .unwrap();
        assert_eq!(text.lines().next().unwrap(), kind, "{args:?}");
    }
}

#[test]
fn input_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("f.txt");
    std::fs::write(&p, "2x + 3\n").unwrap();
    let arg = format!("@{}", p.display());
    assert_eq!(
        sg(&["decompose", &arg]).stdout,
        sg(&["decompose", "2x+3"]).stdout
    );
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_semigold");
    let ok = Command::new(bin)
        .args(["decompose", "2x+3"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stderr).contains("elapsed"));
    let bad = Command::new(bin)
        .args(["decompose", "--ring", "nope", "x"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
