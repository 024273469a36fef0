use std::time::Instant;

use rhoforms::checks::SUITES;

#[test]
fn all_suites_pass() {
    let mut failed = vec![];
    for (name, suite) in SUITES {
        let t = Instant::now();
        let out = suite(7);
        eprintln!("{out} [{:.1?}]", t.elapsed());
        if !out.passed() {
            failed.push(*name);
        }
    }
    assert!(failed.is_empty(), "failing suites: {failed:?}");
}
