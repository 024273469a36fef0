mod common;

use common::run;

#[test]
fn golden_examples() {
    let bad = common::golden_failures();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn json_output_matches_schema() {
    let bad = common::schema_failures();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn printed_normal_forms_parse_back() {
    let (n, bad) = common::round_trip(500, 11);
    assert_eq!(n, 500);
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["normalize", "x1*x2"]).0, 0);
    assert_eq!(run(&["normalize", "x1 + * x2"]).0, 2);
    assert_eq!(run(&["normalize", "x3"]).0, 2);
    assert_eq!(run(&["normalize", "x1/x2"]).0, 1);
    assert_eq!(run(&["normalize", "--algebra", "torus:n=2", "1"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn command_results() {
    let id = "fvform k=1 deg=(0,0) x1->d(x1) x2->d(x2)";
    assert_eq!(run(&["d", "x1*x2"]).1, "d(x1*x2)");
    assert_eq!(run(&["apply-deriv", "deriv deg=(0,-1) x2->1", "x1*x2"]).1, "q * x1");
    assert_eq!(run(&["contract", id, "x1*d(x2) /\\ d(x1)"]).1, "2 * x1*d(x2) /\\ d(x1)");
    assert_eq!(run(&["lie", id, "x1*x2"]).1, "d(x1*x2)");
    assert_eq!(run(&["omega-map", "hom x1->x1 x2->0", "x1*d(x2) + x2*d(x1) + d(x1)"]).1, "d(x1)");
    assert_eq!(run(&["cohomology", "--algebra", "clockshift:n=2", "--grade", "0,0"]).1, "betti [1, 0, 0]\ndims [1, 3, 9]");
    let (code, out) = run(&["decompose", "deg=1:(0,0) x1->d(x1) x2->d(x2)"]);
    assert_eq!(code, 0);
    assert_eq!(out, format!("K: {id}\nL: fvform k=2 deg=(0,0) x1->0 x2->0"));
    let (code, out) = run(&["related", "hom x1->x1 x2->0", "fvform k=0 deg=(0,-1) x2->1", "fvform k=0 deg=(0,-1)"]);
    assert_eq!((code, out.as_str()), (0, "not related [witness: d(x2)]"));
}

#[test]
fn check_reports_seed() {
    let (code, out) = run(&["check", "--suite", "cocycle", "--seed", "42"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("PASS cocycle (seed 42,"), "{out}");
    assert_eq!(run(&["check", "--suite", "nope"]).0, 2);
}

#[test]
fn check_all_runs_every_suite() {
    let (code, out) = run(&["check", "--seed", "1"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), rhoforms::checks::SUITES.len());
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
}
