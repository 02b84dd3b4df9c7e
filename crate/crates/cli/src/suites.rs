use serde::{Deserialize, Serialize};

use crate::criteria::{self, Check};

pub const SUITES: [&str; 5] = ["sl-r-small", "sl-h-small", "theorem1", "solvable-all", "tensors"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.line());
            out.push('\n');
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!(
            "suite {}: {} ({} checks, {} failed)\n",
            self.suite,
            if self.passed { "pass" } else { "fail" },
            self.checks.len(),
            failed
        ));
        out
    }
}

/// `None` when the suite name is unknown.
pub fn run_suite(name: &str) -> Option<SuiteReport> {
    let checks: Vec<Check> = match name {
        "sl-r-small" => vec![
            criteria::borel_example(),
            criteria::coefficient_tables(&[2, 3, 4], &[]),
            criteria::autoparallel(4, 0),
            criteria::parabolic_classification(&[3, 4]),
            criteria::solvable_recipe(4),
            criteria::invariant_factor(12, 4),
            criteria::representation_layer(4, 0),
            criteria::branch_order(&[3, 4, 5]),
        ],
        "sl-h-small" => vec![
            criteria::weyl_vanishes(&[], &criteria::QUATERNION_SIZES),
            criteria::coefficient_tables(&[], &criteria::QUATERNION_SIZES),
            criteria::autoparallel(1, 3),
            criteria::quaternionic(&criteria::QUATERNION_SIZES),
            criteria::representation_layer(1, 3),
        ],
        "theorem1" => vec![criteria::parabolic_classification(&[6, 7])],
        "solvable-all" => vec![criteria::solvable_recipe(6), criteria::invariant_factor(12, 5)],
        "tensors" => vec![
            criteria::weyl_vanishes(&[2, 3, 4, 5], &criteria::QUATERNION_SIZES),
            criteria::coefficient_tables(&criteria::REAL_TABLE_SIZES, &criteria::QUATERNION_SIZES),
            criteria::graded_comparison(),
        ],
        _ => return None,
    };
    let passed = checks.iter().all(|c| c.passed);
    Some(SuiteReport { suite: name.to_string(), passed, checks })
}
