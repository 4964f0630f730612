//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! with the measured time against the stated target, and fails with the
//! first counterexample when the sweep found one.

use takahasi_core::experiments::{self, Options, DEFAULT_SEED};

fn run_criterion(number: usize, name: &str) {
    let outcome = experiments::run(name, DEFAULT_SEED, &Options::default())
        .unwrap_or_else(|| panic!("no driver registered under {name:?}"));
    let verdict = if outcome.passed { "PASS" } else { "FAIL" };
    println!(
        "criterion {number:02} {name}: {verdict} ({} checks, {} violations, {} ms, target {} ms)",
        outcome.checks, outcome.violations, outcome.elapsed_ms, outcome.target_ms
    );
    for line in &outcome.lines {
        println!("    {line}");
    }
    assert!(
        outcome.passed,
        "criterion {number:02} {name}: {} of {} checks failed; first: {}",
        outcome.violations,
        outcome.checks,
        outcome
            .first_counterexample
            .as_deref()
            .unwrap_or("(none recorded)")
    );
}

#[test]
fn criterion_01_subgroup_rank_matches_nielsen() {
    run_criterion(1, "stallings-rank");
}

#[test]
fn criterion_02_pipeline_rank_within_bound() {
    run_criterion(2, "ragr-bound");
}

#[test]
fn criterion_03_folding_is_confluent() {
    run_criterion(3, "fold-order");
}

#[test]
fn criterion_04_numeric_profiles_match_oracle() {
    run_criterion(4, "numeric-profile");
}

#[test]
fn criterion_05_plane_chain_ascends_strictly() {
    run_criterion(5, "notts");
}

#[test]
fn criterion_06_component_rank_bound_and_language() {
    run_criterion(6, "rees-bound");
}

#[test]
fn criterion_07_semilattice_indices() {
    run_criterion(7, "clifford-index");
}

#[test]
fn criterion_08_retraction_transfer() {
    run_criterion(8, "fug-retraction");
}

#[test]
fn criterion_09_short_image_fixed_ranks() {
    run_criterion(9, "ltwo-sweep");
}

#[test]
fn criterion_10_closed_form_fixed_submonoids() {
    run_criterion(10, "fix-closed-forms");
}

#[test]
fn criterion_11_rewriting_system_confluence() {
    run_criterion(11, "rewrite-system");
}

#[test]
fn criterion_12_unbounded_indecomposables() {
    run_criterion(12, "exth");
}

#[test]
fn criterion_13_periodic_point_machinery() {
    run_criterion(13, "per-machinery");
}
