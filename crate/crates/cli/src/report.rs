//! Report structures serialized to JSON and rendered as text. Output is a
//! pure function of the inputs: no timestamps, stable field order.

use serde::Serialize;
use std::path::Path;

use fourstate::observables::{ConditionalTable, OutcomeTable};

/// One named check: the measured value against its target and tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    /// Passes when |measured - expected| <= tolerance.
    pub fn equals(name: &str, measured: f64, expected: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            measured,
            expected,
            tolerance,
            pass: (measured - expected).abs() <= tolerance,
        }
    }

    /// Passes when measured <= expected + tolerance.
    pub fn at_most(name: &str, measured: f64, expected: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            measured,
            expected,
            tolerance,
            pass: measured <= expected + tolerance,
        }
    }

    /// Passes when measured >= expected - tolerance.
    pub fn at_least(name: &str, measured: f64, expected: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            measured,
            expected,
            tolerance,
            pass: measured >= expected - tolerance,
        }
    }
}

/// Scenario outcome: named checks plus scenario-specific JSON payload.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub detail: serde_json::Value,
}

impl ScenarioReport {
    pub fn new(scenario: &str, checks: Vec<CheckResult>, detail: serde_json::Value) -> Self {
        let passed = checks.iter().all(|c| c.pass);
        ScenarioReport { scenario: scenario.to_string(), passed, checks, detail }
    }

    /// Human-readable summary, one line per check.
    pub fn text(&self) -> String {
        let mut text = format!(
            "scenario {}: {}\n",
            self.scenario,
            if self.passed { "PASS" } else { "FAIL" }
        );
        for c in &self.checks {
            text.push_str(&format!(
                "  check {}: measured {:.16e}, expected {:.16e}, tolerance {:.3e} -> {}\n",
                c.name,
                c.measured,
                c.expected,
                c.tolerance,
                if c.pass { "PASS" } else { "FAIL" }
            ));
        }
        text
    }

    /// Writes `<scenario>.json` and `<scenario>.txt` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<(), String> {
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| format!("cannot serialize {}: {e}", self.scenario))?;
        let json_path = dir.join(format!("{}.json", self.scenario));
        std::fs::write(&json_path, json + "\n")
            .map_err(|e| format!("cannot write {}: {e}", json_path.display()))?;
        let txt_path = dir.join(format!("{}.txt", self.scenario));
        std::fs::write(&txt_path, self.text())
            .map_err(|e| format!("cannot write {}: {e}", txt_path.display()))?;
        Ok(())
    }
}

/// Outcome table with the fixed JSON key names.
#[derive(Debug, Clone, Serialize)]
pub struct OutcomeJson {
    pub w_pp: f64,
    pub w_pm: f64,
    pub w_mp: f64,
    pub w_mm: f64,
}

impl From<&OutcomeTable> for OutcomeJson {
    fn from(t: &OutcomeTable) -> Self {
        OutcomeJson { w_pp: t.w_pp, w_pm: t.w_pm, w_mp: t.w_mp, w_mm: t.w_mm }
    }
}

/// Conditional table with the fixed JSON key names; undefined entries are
/// null. p_x_given_y is the probability of second-bit outcome x given
/// first-bit outcome y.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionalJson {
    pub p_1_given_1: Option<f64>,
    pub p_1_given_m1: Option<f64>,
    pub p_m1_given_1: Option<f64>,
    pub p_m1_given_m1: Option<f64>,
}

impl From<&ConditionalTable> for ConditionalJson {
    fn from(t: &ConditionalTable) -> Self {
        ConditionalJson {
            p_1_given_1: t.p_plus_given_plus,
            p_1_given_m1: t.p_plus_given_minus,
            p_m1_given_1: t.p_minus_given_plus,
            p_m1_given_m1: t.p_minus_given_minus,
        }
    }
}
