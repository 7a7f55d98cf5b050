//! Structured pass/fail reports for verification sweeps.
//!
//! Every `verify_*` and `check_*` routine in this crate returns a
//! [`PropertyReport`]: one [`PropertyCheck`] per property, carrying trial
//! and failure counts, the worst violation magnitude seen, and a JSON
//! witness for the first failure.  A violation magnitude is a nonnegative
//! number measuring how badly the property was broken; `0.0` means the
//! property held on every trial.

use serde::{Deserialize, Serialize};

/// Outcome of checking one property over a number of trials.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropertyCheck {
    /// Short identifier of the property checked.
    pub item: String,
    /// Number of trials actually evaluated.
    pub trials: u64,
    /// Number of trials on which the property failed.
    pub failures: u64,
    /// Largest violation magnitude over all failing trials (0.0 if none).
    pub worst_violation: f64,
    /// Witness data for the first failure, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl PropertyCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// A bundle of property checks produced by one verification routine.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
}

/// Alias used by cone validation, which is a property report like any other.
pub type ValidationReport = PropertyReport;

impl PropertyReport {
    pub fn new() -> Self {
        Self { checks: Vec::new() }
    }

    pub fn push(&mut self, check: PropertyCheck) {
        self.checks.push(check);
    }

    /// True when every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(PropertyCheck::passed)
    }

    /// Looks up a check by item name.
    pub fn check(&self, item: &str) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| c.item == item)
    }

    /// Merges another report into this one.
    pub fn extend(&mut self, other: PropertyReport) {
        self.checks.extend(other.checks);
    }

    /// One human-readable line per check, suitable for a terminal.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "{status}  {item}: {failures}/{trials} failures",
                item = c.item,
                failures = c.failures,
                trials = c.trials,
            ));
            if !c.passed() {
                out.push_str(&format!(
                    " (worst violation {:.3e})",
                    c.worst_violation
                ));
            }
            out.push('\n');
        }
        out
    }
}

/// Incremental builder for a [`PropertyCheck`].
///
/// `record` takes the violation magnitude of one trial: zero or negative
/// means the trial passed, positive means it failed by that much.  The
/// witness kept is the one of the worst violation seen.
#[derive(Debug)]
pub(crate) struct CheckBuilder {
    item: String,
    trials: u64,
    failures: u64,
    worst_violation: f64,
    witness: Option<serde_json::Value>,
}

impl CheckBuilder {
    pub fn new(item: impl Into<String>) -> Self {
        Self {
            item: item.into(),
            trials: 0,
            failures: 0,
            worst_violation: 0.0,
            witness: None,
        }
    }

    pub fn record(&mut self, violation: f64, witness: impl FnOnce() -> serde_json::Value) {
        self.trials += 1;
        if violation > 0.0 {
            self.failures += 1;
            if violation > self.worst_violation || self.witness.is_none() {
                self.witness = Some(witness());
            }
            if violation > self.worst_violation {
                self.worst_violation = violation;
            }
        }
    }

    /// Records a trial judged only as pass/fail, with unit violation on fail.
    pub fn record_bool(&mut self, ok: bool, witness: impl FnOnce() -> serde_json::Value) {
        self.record(if ok { 0.0 } else { 1.0 }, witness);
    }

    pub fn finish(self) -> PropertyCheck {
        PropertyCheck {
            item: self.item,
            trials: self.trials,
            failures: self.failures,
            worst_violation: self.worst_violation,
            witness: self.witness,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_keeps_worst_witness_and_violation() {
        let mut b = CheckBuilder::new("demo");
        b.record(0.0, || serde_json::json!("unused"));
        b.record(0.5, || serde_json::json!("mild"));
        b.record(2.0, || serde_json::json!("severe"));
        b.record(1.0, || serde_json::json!("later"));
        let check = b.finish();
        assert_eq!(check.trials, 4);
        assert_eq!(check.failures, 3);
        assert_eq!(check.worst_violation, 2.0);
        assert_eq!(check.witness, Some(serde_json::json!("severe")));
        assert!(!check.passed());
    }

    #[test]
    fn report_round_trips_through_json() {
        let mut report = PropertyReport::new();
        let mut b = CheckBuilder::new("ok");
        b.record(0.0, || serde_json::json!(null));
        report.push(b.finish());
        assert!(report.passed());
        let text = serde_json::to_string(&report).unwrap();
        let back: PropertyReport = serde_json::from_str(&text).unwrap();
        assert!(back.passed());
        assert_eq!(back.check("ok").unwrap().trials, 1);
        // Passing checks serialize without a witness field.
        assert!(!text.contains("witness"));
    }
}
