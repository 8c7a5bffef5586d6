//! Desk-scale checks of the ordering and diversity claims against
//! brute-force oracles.
//!
//! Every check is seeded. Trial `t` of a check draws from ChaCha8 on stream
//! `t` of the base seed, so a recorded `(seed, trial)` pair replays exactly
//! and trials can run in parallel without changing the report.

pub mod fixtures;
pub mod gap;
pub mod monotonicity;
pub mod prefix_advantage;
pub mod reference;
pub mod stats;
pub mod subset_agreement;

pub use gap::{gap_study, GapConfig};
pub use monotonicity::{check_edge_monotonicity, monotonicity_trial, MonotonicityTrial};
pub use prefix_advantage::{check_prefix_advantage, PrefixAdvantageConfig};
pub use reference::check_reference_matrix;
pub use subset_agreement::{
    check_subset_agreement, subset_agreement_on_matrix, SubsetAgreementTrial,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// A recorded counterexample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: usize,
    /// Base seed; `(seed, trial)` replays the instance.
    pub seed: u64,
    pub description: String,
    #[serde(default)]
    pub values: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub check_name: String,
    pub trials: usize,
    /// Trials in which the checked claim held.
    pub agreements: usize,
    /// Trials in which it did not; `agreements + violations.len() == trials`.
    pub violations: Vec<Violation>,
    /// Whether a violation fails the check. Report-only claims set this to
    /// false and record their counterexamples without failing.
    pub violations_are_fatal: bool,
    /// Failed hard assertions that are not themselves the checked claim.
    pub failures: Vec<Violation>,
    pub statistics: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn new(check_name: impl Into<String>, violations_are_fatal: bool) -> Self {
        Self {
            check_name: check_name.into(),
            trials: 0,
            agreements: 0,
            violations: Vec::new(),
            violations_are_fatal,
            failures: Vec::new(),
            statistics: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && !(self.violations_are_fatal && !self.violations.is_empty())
    }

    pub(crate) fn record(&mut self, held: bool, violation: impl FnOnce() -> Violation) {
        self.trials += 1;
        if held {
            self.agreements += 1;
        } else {
            self.violations.push(violation());
        }
    }

    pub(crate) fn stat(&mut self, key: impl Into<String>, value: f64) {
        self.statistics.insert(key.into(), value);
    }
}

/// Everything `validate` runs, with its overall verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationSuite {
    pub passed: bool,
    pub checks: Vec<ValidationReport>,
}

impl ValidationSuite {
    pub fn new(checks: Vec<ValidationReport>) -> Self {
        Self {
            passed: checks.iter().all(ValidationReport::passed),
            checks,
        }
    }
}

pub(crate) fn values<const N: usize>(
    pairs: [(&str, serde_json::Value); N],
) -> BTreeMap<String, serde_json::Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
