//! One pass/fail line per acceptance criterion, each with its time budget.

mod common;

use std::time::{Duration, Instant};

use rhoforms::checks::{self, Outcome};

const SEED: u64 = 20261016;

struct Criterion {
    number: usize,
    name: &'static str,
    budget_secs: u64,
    run: fn() -> (usize, Vec<String>),
}

fn suite(s: fn(u64) -> Outcome) -> (usize, Vec<String>) {
    let out = s(SEED);
    (out.cases, out.failures)
}

fn cli() -> (usize, Vec<String>) {
    let mut failures = common::golden_failures();
    failures.extend(common::schema_failures());
    let (n, bad) = common::round_trip(500, SEED);
    failures.extend(bad);
    (common::GOLDEN.len() + common::schema_commands().len() + n, failures)
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, name: "cocycle and extended cocycle laws", budget_secs: 5, run: || suite(checks::cocycle) },
    Criterion { number: 2, name: "rho-commutativity of both example algebras", budget_secs: 10, run: || suite(checks::commutativity) },
    Criterion { number: 3, name: "clock-shift product equals the matrix product", budget_secs: 5, run: || suite(checks::matrix_oracle) },
    Criterion { number: 4, name: "d^2 = 0 and graded Leibniz on universal forms", budget_secs: 30, run: || suite(checks::forms) },
    Criterion { number: 5, name: "fields and derivations correspond", budget_secs: 10, run: || suite(checks::universality) },
    Criterion { number: 6, name: "contractions are derivations; Jacobi identity", budget_secs: 60, run: || suite(checks::contraction) },
    Criterion { number: 7, name: "decomposition D = L_K + j_L", budget_secs: 60, run: || suite(checks::decomposition) },
    Criterion { number: 8, name: "Froelicher-Nijenhuis bracket and Lie derivatives", budget_secs: 120, run: || suite(checks::fn_bracket) },
    Criterion { number: 9, name: "naturality under homomorphisms", budget_secs: 30, run: || suite(checks::naturality) },
    Criterion { number: 10, name: "de Rham cohomology of the universal calculus", budget_secs: 120, run: || suite(checks::cohomology) },
    Criterion { number: 11, name: "command line: golden files, schema, round trip", budget_secs: 10, run: cli },
];

fn main() {
    let mut failed = vec![];
    for c in CRITERIA {
        let start = Instant::now();
        let (cases, failures) = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(c.budget_secs);
        let pass = failures.is_empty() && in_time;
        println!(
            "criterion {:>2}: {} {} ({cases} cases, {:.2}s of {}s)",
            c.number,
            if pass { "PASS" } else { "FAIL" },
            c.name,
            elapsed.as_secs_f64(),
            c.budget_secs
        );
        for f in failures.iter().take(5) {
            println!("    {f}");
        }
        if !in_time {
            println!("    over the time budget");
        }
        if !pass {
            failed.push(c.number);
        }
    }
    if failed.is_empty() {
        println!("all {} criteria passed", CRITERIA.len());
    } else {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
