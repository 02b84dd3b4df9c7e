//! One line per acceptance criterion. Every comparison is exact; the only
//! pinned tolerances are the wall-clock budgets.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use projflat_cli::criteria::{self, Check};

type Criterion = (u8, &'static str, Option<u64>, fn() -> Check);

const CRITERIA: [Criterion; 10] = [
    (1, "exact, zero tolerance", Some(30), || criteria::weyl_vanishes(&[2, 3, 4, 5], &criteria::QUATERNION_SIZES)),
    (2, "exact", None, || criteria::coefficient_tables(&criteria::REAL_TABLE_SIZES, &criteria::QUATERNION_SIZES)),
    (3, "exact", Some(60), || criteria::autoparallel(6, 3)),
    (4, "exact, zero unknown", Some(600), || criteria::parabolic_classification(&[6, 7])),
    (5, "exact", Some(600), || criteria::quaternionic(&criteria::QUATERNION_SIZES)),
    (6, "exact", Some(120), || criteria::solvable_recipe(6)),
    (7, "symbolic, exact", None, || criteria::invariant_factor(12, 5)),
    (8, "exact", None, criteria::graded_comparison),
    (9, "exact", None, || criteria::representation_layer(6, 3)),
    (10, "exact, seeded", None, || criteria::properties(0x5eed)),
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (id, tolerance, budget, run) in CRITERIA {
        let start = Instant::now();
        let check = run();
        let elapsed = start.elapsed();
        let in_budget = budget.is_none_or(|s| elapsed <= Duration::from_secs(s));
        let passed = check.passed && in_budget;
        if !passed {
            failed += 1;
        }
        let budget = budget.map_or(String::new(), |s| format!(" budget {s}s"));
        println!(
            "criterion {id:>2} {}: {} [{tolerance}; {:.2}s{budget}] {}",
            check.name,
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            check.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
