#![allow(dead_code)]

use serde_json::Value;

use rhoforms::{sample, FormSpace, Presentation};
use rhoforms_cli::{expr, run_command};

pub fn run(args: &[&str]) -> (i32, String) {
    run_command(args.iter().copied())
}

/// `(command line, golden file)` for the documented examples.
pub const GOLDEN: &[(&[&str], &str)] = &[
    (&["normalize", "--algebra", "qplane:N=2", "x2*x1"], include_str!("../golden/normalize.txt")),
    (&["commutator", "--algebra", "qplane:N=2", "x1", "x2"], include_str!("../golden/commutator.txt")),
    (&["d", "--algebra", "qplane:N=2", "1"], include_str!("../golden/d_one.txt")),
];

pub fn golden_failures() -> Vec<String> {
    let mut bad = vec![];
    for (args, expected) in GOLDEN {
        let (code, out) = run(args);
        if code != 0 || out != expected.trim_end() {
            bad.push(format!("{args:?}: exit {code}, got {out:?}, expected {:?}", expected.trim_end()));
        }
    }
    bad
}

/// Command lines covering every result kind and the error paths.
pub fn schema_commands() -> Vec<Vec<&'static str>> {
    let k = "fvform k=0 deg=(-1,0) x1->1";
    let id = "fvform k=1 deg=(0,0) x1->d(x1) x2->d(x2)";
    vec![
        vec!["normalize", "x2*x1 + 3/4*q"],
        vec!["normalize", "x1*d(x2) /\\ d(x1)"],
        vec!["normalize", "--algebra", "clockshift:n=3", "qh*p - eps*p"],
        vec!["commutator", "x1", "x2"],
        vec!["apply-deriv", "deriv deg=(0,-1) x2->x1", "x2^2"],
        vec!["d", "x1*x2"],
        vec!["wedge", "d(x1)", "x2*d(x2)"],
        vec!["contract", id, "x1*d(x2) /\\ d(x1)"],
        vec!["lie", k, "x1^2*d(x2)"],
        vec!["nijenhuis", id, id],
        vec!["fn-bracket", k, "fvform k=0 deg=(0,-1) x2->x2"],
        vec!["decompose", "deg=1:(0,0) x1->d(x1) x2->d(x2)"],
        vec!["omega-map", "hom x1->x1 x2->0", "x1*d(x2) + x2*d(x1)"],
        vec!["related", "hom x1->x1 x2->0", "fvform k=0 deg=(0,-1) x2->1", "fvform k=0 deg=(0,-1)"],
        vec!["naturality", "hom x1->x1 x2->0", k, k, id, id],
        vec!["cohomology", "--algebra", "clockshift:n=2", "--grade", "0,0", "--max-degree", "2"],
        vec!["check", "--suite", "matrix-oracle", "--seed", "3"],
        vec!["normalize", "x3"],
        vec!["normalize", "(x1"],
        vec!["d", "--algebra", "clockshift:n=1", "p"],
        vec!["apply-deriv", "deriv deg=(0,0) x1->1", "x1"],
        vec!["frobnicate"],
    ]
}

/// Validates the JSON output of every schema command; also checks that the
/// text rendering matches `result.text` where one is present.
pub fn schema_failures() -> Vec<String> {
    let schema: Value = serde_json::from_str(include_str!("../output.schema.json")).expect("schema parses");
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let mut bad = vec![];
    for args in schema_commands() {
        let mut json_args = args.clone();
        json_args.extend(["--format", "json"]);
        let (code, out) = run(&json_args);
        let doc: Value = match serde_json::from_str(&out) {
            Ok(v) => v,
            Err(e) => {
                bad.push(format!("{args:?}: not JSON ({e}): {out}"));
                continue;
            }
        };
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
        if !errors.is_empty() {
            bad.push(format!("{args:?}: {errors:?}"));
        }
        let (text_code, text) = run(&args);
        if text_code != code {
            bad.push(format!("{args:?}: exit codes differ between formats ({code} vs {text_code})"));
        }
        if let Some(t) = doc["result"]["text"].as_str() {
            if t != text {
                bad.push(format!("{args:?}: text {text:?} differs from JSON text {t:?}"));
            }
        }
        let is_error = doc.get("error").is_some();
        if is_error != (code != 0) {
            bad.push(format!("{args:?}: exit code {code} but error={is_error}"));
        }
    }
    bad
}

/// Prints random normal forms and parses them back; returns the number of
/// forms checked and any mismatches.
pub fn round_trip(count: usize, seed: u64) -> (usize, Vec<String>) {
    let mut rng = sample::rng(seed);
    let spaces = [
        FormSpace::trivial(&Presentation::quantum_plane(2)),
        FormSpace::trivial(&Presentation::quantum_plane(3)),
        FormSpace::trivial(&Presentation::clock_shift(3).unwrap()),
        FormSpace::trivial(&Presentation::cyclic(5).unwrap()),
    ];
    let mut bad = vec![];
    for i in 0..count {
        let space = &spaces[i % spaces.len()];
        let w = if i % 3 == 0 {
            let u = sample::element(&mut rng, space.presentation(), 4, 3);
            rhoforms::Form::from_element(space, &u).unwrap()
        } else {
            sample::form(&mut rng, space, 3, 3, 2)
        };
        let text = w.to_string();
        match expr::form(&text, space) {
            Ok(back) if back == w => {}
            Ok(back) => bad.push(format!("{text} parsed back as {back}")),
            Err(e) => bad.push(format!("{text}: {e}")),
        }
    }
    (count, bad)
}
