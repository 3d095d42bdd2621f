//! The acceptance gate: every criterion must pass; one report line each.

use evoalg::acceptance::run_all;

#[test]
fn acceptance_suite() {
    let outcomes = run_all();
    assert_eq!(outcomes.len(), 9);
    let mut all_passed = true;
    for outcome in &outcomes {
        println!("{}", outcome.report_line());
        all_passed &= outcome.passed;
    }
    assert!(all_passed, "at least one acceptance criterion failed");
}
