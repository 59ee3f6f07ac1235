//! Machine-readable verification reports.

use serde::Serialize;
use std::fmt::Write;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    /// Measured deviation, or None for exact comparisons.
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Suite {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Fitted constants, resolved variants and other facts worth logging.
    pub notes: Vec<String>,
}

impl Suite {
    pub fn new(name: &str) -> Self {
        Suite { name: name.to_string(), passed: true, checks: Vec::new(), notes: Vec::new() }
    }

    pub fn tol(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        let passed = residual.is_finite() && residual < tolerance;
        self.push(Check { name: name.into(), residual: Some(residual), tolerance: Some(tolerance), passed, detail: String::new() });
    }

    pub fn exact(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.push(Check { name: name.into(), residual: None, tolerance: None, passed, detail: detail.into() });
    }

    /// Record an error that prevented a check from running.
    pub fn error(&mut self, name: impl Into<String>, e: impl std::fmt::Display) {
        self.exact(name, false, format!("error: {e}"));
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn push(&mut self, c: Check) {
        self.passed &= c.passed;
        self.checks.push(c);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<Suite>,
}

impl Report {
    pub fn new(seed: u64, suites: Vec<Suite>) -> Self {
        let passed = suites.iter().all(|s| s.passed);
        Report { seed, passed, suites }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "check", "residual", "tolerance", "passed", "detail"]).expect("in-memory write");
        for s in &self.suites {
            for c in &s.checks {
                let f = |x: Option<f64>| x.map(|v| format!("{v:e}")).unwrap_or_default();
                w.write_record([s.name.as_str(), &c.name, &f(c.residual), &f(c.tolerance), if c.passed { "true" } else { "false" }, &c.detail])
                    .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let _ = writeln!(out, "[{}] {}", if s.passed { "PASS" } else { "FAIL" }, s.name);
            for c in &s.checks {
                let r = match (c.residual, c.tolerance) {
                    (Some(r), Some(t)) => format!(" {r:.2e} < {t:.0e}"),
                    _ => String::new(),
                };
                let d = if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) };
                let _ = writeln!(out, "  {} {}{}{}", if c.passed { "ok  " } else { "FAIL" }, c.name, r, d);
            }
            for n in &s.notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_check_fails_suite() {
        let mut s = Suite::new("x");
        s.tol("a", 1e-12, 1e-9);
        assert!(s.passed);
        s.tol("b", f64::NAN, 1e-9);
        assert!(!s.passed);
        let r = Report::new(1, vec![s]);
        assert!(!r.passed);
        assert!(r.to_csv().lines().count() == 3);
        assert!(r.to_json().contains("\"seed\": 1"));
    }
}
