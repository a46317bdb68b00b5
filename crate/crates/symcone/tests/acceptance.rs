//! Acceptance suite: runs every numbered criterion at its stated tolerance
//! and prints one pass/fail line per criterion (`--nocapture` to see them
//! all in one run).

use symcone::diagnostics::{self, CheckOutcome};

const SEED: u64 = 0x5ca1ab1e;

fn report(number: u32, outcome: &CheckOutcome) {
    println!(
        "criterion {:02} {:<24} {} (max_err {:.3e}, {} cases){}",
        number,
        outcome.name,
        if outcome.pass { "PASS" } else { "FAIL" },
        outcome.max_err,
        outcome.cases,
        if outcome.pass {
            String::new()
        } else {
            format!(" - {}", outcome.detail)
        }
    );
    assert!(
        outcome.pass,
        "criterion {number} ({}) failed: {} (max_err {:.3e})",
        outcome.name, outcome.detail, outcome.max_err
    );
}

#[test]
fn criterion_01_oracle_equivalence() {
    report(1, &diagnostics::check_oracle_equivalence(SEED ^ 1, 200, 1e-8));
}

#[test]
fn criterion_02_isometry_invariance() {
    report(2, &diagnostics::check_isometry_invariance(SEED ^ 2, 50, 1e-8));
}

#[test]
fn criterion_03_exact_segment_value() {
    report(3, &diagnostics::check_segment_value(SEED ^ 3, 1e-10));
}

#[test]
fn criterion_04_geodesic_law() {
    report(4, &diagnostics::check_geodesic_law(SEED ^ 4, 100, 1e-8));
}

#[test]
fn criterion_05_mean_laws() {
    report(5, &diagnostics::check_mean_laws(SEED ^ 5, 20, 1e-7));
}

#[test]
fn criterion_06_dn_convergence() {
    report(6, &diagnostics::check_dn_convergence(SEED ^ 6));
}

#[test]
fn criterion_07_uniqueness_classifier() {
    report(7, &diagnostics::check_uniqueness_classifier(SEED ^ 7, 30, 1e-9));
}

#[test]
fn criterion_08_thompson_factorization_roundtrip() {
    report(8, &diagnostics::check_thompson_roundtrip(SEED ^ 8, 50, 1e-6));
}

#[test]
fn criterion_09_hilbert_factorization_roundtrip() {
    report(9, &diagnostics::check_hilbert_roundtrip(SEED ^ 9, 50, 100, 1e-6));
}

#[test]
fn criterion_10_extreme_points() {
    report(10, &diagnostics::check_extreme_points());
}

#[test]
fn criterion_11_chains() {
    report(11, &diagnostics::check_chains(SEED ^ 11, 50));
}

#[test]
fn criterion_12_group_relations() {
    report(12, &diagnostics::check_group_relations(SEED ^ 12, 1e-9));
}

// Supporting invariants beyond the numbered criteria: metric axioms,
// associative exactness, straight-segment geodesics, simplex geodesics, and
// the quotient action of recovered isomorphisms.
#[test]
fn supporting_metric_properties() {
    let outcome = diagnostics::check_metric_properties(SEED ^ 13, 200, 1e-8);
    report(13, &outcome);
    let outcome = diagnostics::check_quotient_action(SEED ^ 14, 1e-7);
    report(14, &outcome);
    let outcome = diagnostics::check_algebra_identities(SEED ^ 15);
    report(15, &outcome);
}
