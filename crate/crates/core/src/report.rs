//! Structured results of a verification run.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Tolerance for identities that hold only up to quadrature error.
pub const QUADRATURE_TOL: f64 = 1e-6;
/// Tolerance for identities that two evaluations of the same linear map must satisfy.
pub const ALGEBRAIC_TOL: f64 = 1e-9;

/// A secondary bound checked by a suite next to its headline residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.tolerance
    }
}

/// Outcome of one suite: the headline residual (max over trials) against its
/// tolerance, optional secondary checks, and free-form notes.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub trials: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, tolerance: f64) -> Self {
        VerificationReport {
            suite: suite.into(),
            trials: 0,
            max_residual: 0.0,
            tolerance,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Adds one trial's residual; NaN counts as an infinite residual.
    pub fn record(&mut self, residual: f64) {
        let r = if residual.is_nan() { f64::INFINITY } else { residual };
        self.trials += 1;
        if r > self.max_residual {
            self.max_residual = r;
        }
    }

    /// Raises the secondary check `name` to at least `residual`, creating it if needed.
    pub fn check(&mut self, name: &str, residual: f64, tolerance: f64) {
        let r = if residual.is_nan() { f64::INFINITY } else { residual };
        match self.checks.iter_mut().find(|c| c.name == name) {
            Some(c) => c.max_residual = c.max_residual.max(r),
            None => self.checks.push(Check { name: name.to_string(), max_residual: r, tolerance }),
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into().replace('\n', " "));
    }

    /// At least one trial, every residual within tolerance and every check passing.
    pub fn passed(&self) -> bool {
        self.trials >= 1 && self.max_residual <= self.tolerance && self.checks.iter().all(Check::passed)
    }

    /// One-line human-readable verdict.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "[{}] {}: {} trials, max residual {:.3e} (tolerance {:.1e})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.trials,
            self.max_residual,
            self.tolerance
        );
        for c in &self.checks {
            let _ = write!(
                s,
                "; {} {:.3e} ({} {:.1e})",
                c.name,
                c.max_residual,
                if c.passed() { "<=" } else { ">" },
                c.tolerance
            );
        }
        s
    }

    /// `key=value` lines; notes repeat the `note` key.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite={}", self.suite);
        let _ = writeln!(out, "trials={}", self.trials);
        let _ = writeln!(out, "max_residual={:e}", self.max_residual);
        let _ = writeln!(out, "tolerance={:e}", self.tolerance);
        let _ = writeln!(out, "passed={}", self.passed());
        for c in &self.checks {
            let _ = writeln!(out, "check={},{:e},{:e}", c.name, c.max_residual, c.tolerance);
        }
        for n in &self.notes {
            let _ = writeln!(out, "note={n}");
        }
        out
    }

    pub fn from_key_values(text: &str) -> Result<Self> {
        let mut report = VerificationReport::new("", 0.0);
        let mut passed = None;
        let bad = |line: &str| Error::Format(format!("bad report line '{line}'"));
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (key, value) = line.split_once('=').ok_or_else(|| bad(line))?;
            match key {
                "suite" => report.suite = value.to_string(),
                "trials" => report.trials = value.parse().map_err(|_| bad(line))?,
                "max_residual" => report.max_residual = value.parse().map_err(|_| bad(line))?,
                "tolerance" => report.tolerance = value.parse().map_err(|_| bad(line))?,
                "passed" => passed = Some(value.parse::<bool>().map_err(|_| bad(line))?),
                "note" => report.notes.push(value.to_string()),
                "check" => {
                    let parts: Vec<&str> = value.split(',').collect();
                    let [name, max, tol] = parts[..] else { return Err(bad(line)) };
                    report.checks.push(Check {
                        name: name.to_string(),
                        max_residual: max.parse().map_err(|_| bad(line))?,
                        tolerance: tol.parse().map_err(|_| bad(line))?,
                    });
                }
                _ => return Err(bad(line)),
            }
        }
        if passed.is_some_and(|p| p != report.passed()) {
            return Err(Error::Format("passed flag disagrees with residual and tolerance".into()));
        }
        Ok(report)
    }
}
