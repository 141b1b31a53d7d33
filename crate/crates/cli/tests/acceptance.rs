//! Acceptance suite: every criterion runs at both benchmark primes and
//! prints one PASS/FAIL line. The final test compares the outcome signatures
//! across the primes.

use quivercover::field::Field;
use quivercover_cli::reproduce::{run_one, CriterionResult};

const SEED: u64 = 0;

fn both_primes(id: u32) -> (CriterionResult, CriterionResult) {
    let a = run_one(Field::prime(101).unwrap(), SEED, id);
    let b = run_one(Field::prime(32003).unwrap(), SEED, id);
    (a, b)
}

fn report(tag: &str, r: &CriterionResult) {
    println!(
        "criterion {:2} [{}] {}: {} ({} ms) - {}",
        r.id,
        tag,
        if r.pass { "PASS" } else { "FAIL" },
        r.name,
        r.millis,
        r.detail
    );
}

fn assert_criterion(id: u32) {
    let (a, b) = both_primes(id);
    report("p=101  ", &a);
    report("p=32003", &b);
    assert!(a.pass, "criterion {id} fails at p=101: {}", a.detail);
    assert!(b.pass, "criterion {id} fails at p=32003: {}", b.detail);
    assert_eq!(
        a.signature, b.signature,
        "criterion {id} differs between primes"
    );
}

#[test]
fn criterion_01_e1_indecomposable_count() {
    assert_criterion(1);
}

#[test]
fn criterion_02_e1_ar_quiver_structure() {
    assert_criterion(2);
}

#[test]
fn criterion_03_covering_hom_identity() {
    assert_criterion(3);
}

#[test]
fn criterion_04_second_kind_family() {
    assert_criterion(4);
}

#[test]
fn criterion_05_pull_up_of_push_down() {
    assert_criterion(5);
}

#[test]
fn criterion_06_exactness_and_faithfulness() {
    assert_criterion(6);
}

#[test]
fn criterion_07_composition_length_two_routes() {
    assert_criterion(7);
}

#[test]
fn criterion_08_periodic_line_census() {
    assert_criterion(8);
}

#[test]
fn criterion_09_precovering_axioms() {
    assert_criterion(9);
}

#[test]
fn criterion_10_standardness_dimension_check() {
    assert_criterion(10);
}

#[test]
fn criterion_11_density_spot_check() {
    assert_criterion(11);
}

#[test]
fn criterion_12_two_prime_stability() {
    // criteria 1..=11 must produce identical counts and verdicts at both
    // primes; the per-criterion tests above already ran them, this one
    // re-checks the collated signatures in a single pass
    let all = quivercover_cli::reproduce::run_all(SEED);
    let last = all.last().expect("twelve results");
    for r in &all {
        report("summary", r);
    }
    assert_eq!(last.id, 12);
    assert!(last.pass, "two-prime stability: {}", last.detail);
    assert!(all.iter().all(|r| r.pass));
}
