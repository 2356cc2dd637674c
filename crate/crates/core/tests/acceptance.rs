//! Acceptance gate: seven criteria, each an exact comparison at fixed
//! bounds. Every criterion prints one PASS/FAIL line.

use wop_core::verify::{self, SuiteReport};

fn report(label: &str, parts: &[SuiteReport]) -> bool {
    let ok = parts.iter().all(SuiteReport::passed);
    let detail: Vec<String> = parts.iter().map(ToString::to_string).collect();
    println!(
        "[{}] {label}: {}",
        if ok { "PASS" } else { "FAIL" },
        detail.join("; ")
    );
    ok
}

#[test]
fn criterion_1_main_theorem() {
    assert!(report(
        "1 main theorem, n <= 8, 2 <= d <= 4",
        &[verify::theorem_w(8, 4)]
    ));
}

#[test]
fn criterion_2_cut_and_join() {
    assert!(report(
        "2 Δ_2 = cut-and-join, weight <= 10",
        &[verify::cut_join(10)]
    ));
}

#[test]
fn criterion_3_beta_and_commute() {
    assert!(report(
        "3 β-independence and commutativity, d <= 4, weight <= 8",
        &[verify::beta(4, 8), verify::commute(4, 8)],
    ));
}

#[test]
fn criterion_4_matrix_realization() {
    let b = verify::Bounds {
        n_max: Some(4),
        d_max: Some(3),
        w_max: Some(4),
        k_max: None,
        big_n: None,
    };
    assert!(report(
        "4 matrix realization, intertwining N <= 4 and per-monomial identity n <= 4, labels {1..3}",
        &[verify::run_one(verify::Suite::XMatrix, &b)],
    ));
}

#[test]
fn criterion_5_hurwitz_pipeline() {
    assert!(report(
        "5 Hurwitz pipeline, n <= 6 (connected n <= 5), d in {2,3}, k <= 3",
        &[verify::hurwitz(6, 5, 3, 3)],
    ));
}

#[test]
fn criterion_6_pde() {
    assert!(report(
        "6 PDE and initial condition, d in {2,3}, k <= 3, weight <= 5",
        &[verify::pde(3, 5, 3)]
    ));
}

#[test]
fn criterion_7_recursion() {
    assert!(report(
        "7 recursion (disconnected), n <= 6, d in {2,3}, k <= 3; connected form fails at (3,2,2)",
        &[verify::recursion(6, 3, 3)],
    ));
}
