//! Machine-readable verification reports.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::Serialize;

use crate::evaluator::Residual;

/// Whether a check asserts an identity or its failure (perturbation oracles).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Equal,
    Differ,
}

/// Residual threshold above which a perturbed identity counts as broken.
pub const DIFFER_THRESHOLD: f64 = 1e-2;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub max_residual: f64,
    pub relative_residual: f64,
    pub worst_index: String,
    pub expect: Expect,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub category: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(suite: &str, category: &str) -> Report {
        Report { suite: suite.into(), category: category.into(), checks: Vec::new(), pass: true }
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    /// An identity check: passes iff `residual < tol`.
    pub fn record(&mut self, id: &str, residual: f64, worst: &str, tol: f64) {
        self.push(Check {
            id: id.into(),
            max_residual: residual,
            relative_residual: residual,
            worst_index: worst.into(),
            expect: Expect::Equal,
            pass: residual < tol,
        });
    }

    pub fn record_residual(&mut self, id: &str, r: &Residual, tol: f64) {
        self.push(Check {
            id: id.into(),
            max_residual: r.max_abs,
            relative_residual: r.relative,
            worst_index: r.worst.clone(),
            expect: Expect::Equal,
            pass: r.max_abs < tol,
        });
    }

    /// A perturbation oracle: passes iff the broken identity really fails.
    pub fn record_failure(&mut self, id: &str, r: &Residual) {
        self.push(Check {
            id: id.into(),
            max_residual: r.max_abs,
            relative_residual: r.relative,
            worst_index: r.worst.clone(),
            expect: Expect::Differ,
            pass: r.max_abs > DIFFER_THRESHOLD,
        });
    }

    /// A check that could not be evaluated at all.
    pub fn record_error(&mut self, id: &str, err: &crate::Error) {
        self.push(Check {
            id: id.into(),
            max_residual: f64::INFINITY,
            relative_residual: f64::INFINITY,
            worst_index: err.to_string(),
            expect: Expect::Equal,
            pass: false,
        });
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().filter(|c| c.expect == Expect::Equal).fold(0.0, |m, c| m.max(c.max_residual))
    }

    pub fn to_json(&self) -> String {
        // Infinite residuals are not valid JSON numbers; serde_json writes them as null.
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
