use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// One verified prediction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub description: String,
    /// Where the prediction comes from.
    pub anchor: String,
    pub predicted: String,
    pub measured: f64,
    pub pass: bool,
}

/// Outcome of a pipeline; serialises with a fixed key order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub name: String,
    pub inputs: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub truncation_budget: f64,
    pub diagnostics: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    pub artifacts: Vec<String>,
    pub pass: bool,
}

impl PipelineReport {
    pub fn new(name: &str) -> Self {
        PipelineReport {
            name: name.to_string(),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            truncation_budget: 0.0,
            diagnostics: BTreeMap::new(),
            notes: Vec::new(),
            artifacts: Vec::new(),
            pass: false,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn diag(&mut self, key: &str, value: f64) {
        self.diagnostics.insert(key.to_string(), value);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn check(&mut self, description: &str, anchor: &str, predicted: String, measured: f64, pass: bool) {
        self.checks.push(Check {
            description: description.to_string(),
            anchor: anchor.to_string(),
            predicted,
            measured,
            pass,
        });
        self.refresh();
    }

    pub fn check_le(&mut self, description: &str, anchor: &str, measured: f64, bound: f64) {
        self.check(description, anchor, format!("<= {bound}"), measured, measured <= bound);
    }

    pub fn check_ge(&mut self, description: &str, anchor: &str, measured: f64, bound: f64) {
        self.check(description, anchor, format!(">= {bound}"), measured, measured >= bound);
    }

    pub fn check_eq(&mut self, description: &str, anchor: &str, measured: f64, expected: f64) {
        self.check(description, anchor, format!("== {expected}"), measured, measured == expected);
    }

    pub fn check_true(&mut self, description: &str, anchor: &str, holds: bool) {
        self.check(description, anchor, "true".into(), if holds { 1.0 } else { 0.0 }, holds);
    }

    /// Recompute the overall flag: every check passes and is anchored.
    pub fn refresh(&mut self) {
        self.pass = !self.checks.is_empty() && self.checks.iter().all(|c| c.pass && !c.anchor.is_empty());
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn find(&self, description: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.description == description)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    /// Append the checks of `other` with a prefix on their descriptions.
    pub fn absorb(&mut self, prefix: &str, other: &PipelineReport) {
        for c in &other.checks {
            let mut c = c.clone();
            c.description = format!("{prefix}: {}", c.description);
            self.checks.push(c);
        }
        for (k, v) in &other.diagnostics {
            self.diagnostics.insert(format!("{prefix}.{k}"), *v);
        }
        for n in &other.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
        self.refresh();
    }
}
