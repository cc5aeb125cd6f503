//! Verification reports in text and JSON form.
//!
//! Both renderings depend only on the report contents, which commands fill
//! in canonical order, so identical runs give identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use hetcat::Budget;
use serde::Serialize;

use crate::diag::Diagnostic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Caps in force for the run. The parallelism switch is left out because
/// it must not change any output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BudgetCaps {
    pub set: usize,
    pub objects: usize,
    pub morphisms: usize,
    pub het: usize,
    pub work: u64,
}

impl From<&Budget> for BudgetCaps {
    fn from(b: &Budget) -> Self {
        BudgetCaps {
            set: b.max_set_size,
            objects: b.max_objects,
            morphisms: b.max_morphisms,
            het: b.max_het_size,
            work: b.max_work,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub command: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub witnesses: Vec<BTreeMap<String, String>>,
    pub counterexamples: Vec<Diagnostic>,
    pub budget: BudgetCaps,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(command: impl Into<String>, budget: &Budget) -> VerificationReport {
        VerificationReport {
            command: command.into(),
            status: Status::Pass,
            checks: Vec::new(),
            witnesses: Vec::new(),
            counterexamples: Vec::new(),
            budget: budget.into(),
            timing_ms: None,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    pub fn witness<K: Into<String>, V: Into<String>>(&mut self, fields: impl IntoIterator<Item = (K, V)>) {
        self.witnesses
            .push(fields.into_iter().map(|(k, v)| (k.into(), v.into())).collect());
    }

    pub fn counterexample(&mut self, d: Diagnostic) {
        self.counterexamples.push(d);
    }

    /// Sets the status from the checks and counterexamples, unless an error
    /// was already recorded.
    pub fn conclude(&mut self) {
        if self.status == Status::Error {
            return;
        }
        let ok = self.checks.iter().all(|c| c.passed) && self.counterexamples.is_empty();
        self.status = if ok { Status::Pass } else { Status::Fail };
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "status: {}", self.status.label());
        if !self.checks.is_empty() {
            out.push_str("checks:\n");
            for c in &self.checks {
                let mark = if c.passed { "pass" } else { "FAIL" };
                if c.detail.is_empty() {
                    let _ = writeln!(out, "  [{mark}] {}", c.name);
                } else {
                    let _ = writeln!(out, "  [{mark}] {}: {}", c.name, c.detail);
                }
            }
        }
        if !self.witnesses.is_empty() {
            out.push_str("witnesses:\n");
            for w in &self.witnesses {
                let fields: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(out, "  - {}", fields.join(" "));
            }
        }
        if !self.counterexamples.is_empty() {
            out.push_str("counterexamples:\n");
            for d in &self.counterexamples {
                let _ = writeln!(out, "  {d}");
            }
        }
        let b = &self.budget;
        let _ = writeln!(
            out,
            "budget: set={} objects={} morphisms={} het={} work={}",
            b.set, b.objects, b.morphisms, b.het, b.work
        );
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "time: {ms} ms");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_checks() {
        let b = Budget::default();
        let mut r = VerificationReport::new("validate C", &b);
        r.check("laws", true, "");
        r.conclude();
        assert!(r.passed());
        r.check("other", false, "broken");
        r.conclude();
        assert_eq!(r.status, Status::Fail);
        assert!(r.to_text().contains("[FAIL] other: broken"));
    }

    #[test]
    fn parallel_switch_does_not_show() {
        let b = Budget::default();
        let a = VerificationReport::new("x", &b).to_json();
        let s = VerificationReport::new("x", &b.sequential()).to_json();
        assert_eq!(a, s);
        assert!(!a.contains("parallel"));
        assert!(!a.contains("timing_ms"));
    }
}
