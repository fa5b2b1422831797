//! Acceptance suite. Each test runs one end-to-end criterion and prints a
//! single pass/fail line; run with `--nocapture` to see them all.

use frobenian::acceptance::run_criterion;

fn check(index: usize) {
    let outcome = run_criterion(index).expect("criterion index");
    println!(
        "criterion {} ({}): {} [{}]",
        outcome.index,
        outcome.name,
        if outcome.pass { "PASS" } else { "FAIL" },
        outcome.details
    );
    assert!(outcome.pass, "criterion {} failed: {}", index, outcome.details);
}

#[test]
fn criterion_1_fibonacci_congruence() {
    check(1);
}

#[test]
fn criterion_2_annihilators() {
    check(2);
}

#[test]
fn criterion_3_three_way_congruence() {
    check(3);
}

#[test]
fn criterion_4_certificates() {
    check(4);
}

#[test]
fn criterion_5_density_gap() {
    check(5);
}

#[test]
fn criterion_6_wreath_bound() {
    check(6);
}

#[test]
fn criterion_7_span_check() {
    check(7);
}

#[test]
fn criterion_8_chebotarev() {
    check(8);
}

#[test]
fn criterion_9_round_trip() {
    check(9);
}
