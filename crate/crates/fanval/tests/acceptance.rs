//! Acceptance battery: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test -p fanval --test acceptance -- --nocapture` to see
//! the lines.

use fanval::suite::{self, Outcome, SuiteConfig};

fn report(outcome: Outcome) {
    println!("{}", outcome.line());
    if !outcome.passed {
        println!("{}", serde_json::to_string_pretty(&outcome.details).unwrap());
    }
    assert!(outcome.passed, "criterion {} failed: {}", outcome.id, outcome.summary);
    if let Some(limit) = outcome.limit {
        assert!(outcome.elapsed <= limit, "criterion {} took {:?}, limit {:?}", outcome.id, outcome.elapsed, limit);
    }
}

fn cfg() -> SuiteConfig {
    SuiteConfig::default()
}

#[test]
fn criterion_01_char_poly_agreement() {
    report(suite::criterion_1(cfg()));
}

#[test]
fn criterion_02_region_count() {
    report(suite::criterion_2(cfg()));
}

#[test]
fn criterion_03_halfspace_intrinsic_volumes() {
    report(suite::criterion_3(cfg()));
}

#[test]
fn criterion_04_monte_carlo_char_poly() {
    report(suite::criterion_4(cfg()));
}

#[test]
fn criterion_05_alternating_sum_vanishes() {
    report(suite::criterion_5(cfg()));
}

#[test]
fn criterion_06_exact_identities() {
    report(suite::criterion_6(cfg()));
}

#[test]
fn criterion_07_moreau_fan() {
    report(suite::criterion_7(cfg()));
}

#[test]
fn criterion_08_recovery() {
    report(suite::criterion_8(cfg()));
}

#[test]
fn criterion_09_exceptional_set() {
    report(suite::criterion_9(cfg()));
}

#[test]
fn criterion_10_fan_valuation_identities() {
    report(suite::criterion_10(cfg()));
}
