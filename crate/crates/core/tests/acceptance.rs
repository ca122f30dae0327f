//! Acceptance suite: twelve exactness and property criteria with pinned
//! runtime budgets. Each test prints one pass/fail line; run with
//! `cargo test -p holant-core --test acceptance -- --nocapture` to see them.

use std::time::{Duration, Instant};

use holant_core::verify::{find, VerifyCtx};

fn run_criterion(number: u32, id: &str, budget: Option<Duration>) {
    let ctx = VerifyCtx::default();
    let entry = find(id).unwrap_or_else(|| panic!("registry entry '{id}' missing"));
    let start = Instant::now();
    let outcome = (entry.run)(&ctx);
    let elapsed = start.elapsed();
    match &outcome {
        Ok(()) => println!("criterion {number:>2} ({id}): pass in {elapsed:.2?}"),
        Err(msg) => println!("criterion {number:>2} ({id}): FAIL - {msg}"),
    }
    if let Err(msg) = outcome {
        panic!("criterion {number} ({id}) failed: {msg}");
    }
    if let Some(budget) = budget {
        assert!(
            elapsed < budget,
            "criterion {number} ({id}) took {elapsed:.2?}, budget {budget:.2?}"
        );
    }
}

#[test]
fn criterion_01_k_identities() {
    run_criterion(1, "k-identities", Some(Duration::from_secs(1)));
}

#[test]
fn criterion_02_corner_power() {
    run_criterion(2, "npower", Some(Duration::from_secs(1)));
}

#[test]
fn criterion_03_holographic_invariance() {
    run_criterion(3, "holographic", Some(Duration::from_secs(5)));
}

#[test]
fn criterion_04_associativity() {
    run_criterion(4, "associativity", Some(Duration::from_secs(10)));
}

#[test]
fn criterion_05_classification_fixtures() {
    run_criterion(5, "classify-fixtures", Some(Duration::from_secs(5)));
}

#[test]
fn criterion_06_involution_trace_zero() {
    run_criterion(6, "order2-trace", None);
}

#[test]
fn criterion_07_ratio_families() {
    run_criterion(7, "ratio-lemma", Some(Duration::from_secs(10)));
}

#[test]
fn criterion_08_trace_reality() {
    run_criterion(8, "trace-reality", Some(Duration::from_secs(1)));
}

#[test]
fn criterion_09_rewiring_ratio() {
    run_criterion(9, "rewiring", Some(Duration::from_secs(10)));
}

#[test]
fn criterion_10_membership_and_reduction() {
    run_criterion(10, "membership-reduction", Some(Duration::from_secs(60)));
}

#[test]
fn criterion_11_basis_expansion() {
    run_criterion(11, "pauli", Some(Duration::from_secs(10)));
}

#[test]
fn criterion_12_scaling_normalization() {
    run_criterion(12, "c-normalize", Some(Duration::from_secs(5)));
}
