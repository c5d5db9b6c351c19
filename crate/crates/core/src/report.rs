//! Outcome of an identity check, serializable for the CLI.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;
use crate::qalg::{QSeries, TPoly, EXACT};

/// Truncation used by a check: basis states up to degree `degree`, series
/// compared through `u^{u_order}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub degree: u32,
    pub u_order: i64,
}

/// A disagreement between the two sides of an identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    /// Short descriptive label of the identity being checked.
    pub tag: String,
    pub params: BTreeMap<String, Value>,
    pub window: Window,
    /// Smallest u-window on which compared coefficients were certified
    /// (`null` when every comparison was between exact values).
    pub certified_u_order: Option<i64>,
    pub comparisons: usize,
    pub pass: bool,
    pub failures: Vec<Failure>,
    pub failure_count: usize,
    pub expect_fail: bool,
    pub error: Option<String>,
}

const MAX_RECORDED: usize = 8;

impl CheckReport {
    pub fn new(name: impl Into<String>, tag: impl Into<String>, window: Window) -> Self {
        CheckReport {
            name: name.into(),
            tag: tag.into(),
            params: BTreeMap::new(),
            window,
            certified_u_order: None,
            comparisons: 0,
            pass: true,
            failures: Vec::new(),
            failure_count: 0,
            expect_fail: false,
            error: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn expecting_failure(mut self, expect: bool) -> Self {
        self.expect_fail = expect;
        self
    }

    fn note_window(&mut self, w: i64) {
        if w != EXACT {
            self.certified_u_order = Some(self.certified_u_order.map_or(w, |c| c.min(w)));
        }
    }

    pub fn fail(&mut self, location: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display) {
        self.pass = false;
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED {
            self.failures.push(Failure { location: location.into(), lhs: lhs.to_string(), rhs: rhs.to_string() });
        }
    }

    /// Compares two series on their common window, which must reach the
    /// requested order.
    pub fn compare(&mut self, location: impl fmt::Display, lhs: &QSeries, rhs: &QSeries) {
        self.comparisons += 1;
        let common = lhs.trunc().min(rhs.trunc());
        if common < self.window.u_order {
            self.fail(format!("{location} (window u^{common})"), lhs, rhs);
            return;
        }
        match lhs.agree(rhs) {
            Ok(w) => self.note_window(w),
            Err(m) => self.fail(format!("{location} at u^{}", m.exponent), lhs, rhs),
        }
    }

    pub fn compare_tpoly(&mut self, location: impl fmt::Display, lhs: &TPoly, rhs: &TPoly) {
        self.comparisons += 1;
        if lhs.nvars() > 0 && lhs.t_trunc() != rhs.t_trunc() {
            let at = format!("{location} (t-degree bounds {} and {})", lhs.t_trunc(), rhs.t_trunc());
            self.fail(at, lhs, rhs);
            return;
        }
        let common = lhs.window().min(rhs.window());
        if common < self.window.u_order {
            self.fail(format!("{location} (window u^{common})"), lhs, rhs);
            return;
        }
        match lhs.agree(rhs) {
            Ok(w) => self.note_window(w),
            Err(m) => {
                let at = format!("{location} at t^{:?} Q^{} u^{}", m.monomial.t, m.monomial.q, m.mismatch.exponent);
                self.fail(at, m.mismatch.lhs, m.mismatch.rhs);
            }
        }
    }

    /// Records a boolean condition.
    pub fn require(&mut self, location: impl fmt::Display, ok: bool, detail: impl fmt::Display) {
        self.comparisons += 1;
        if !ok {
            self.fail(location.to_string(), detail, "expected");
        }
    }

    /// Marks the check as unable to run.
    pub fn errored(mut self, e: &Error) -> Self {
        self.pass = false;
        self.error = Some(e.to_string());
        self
    }

    /// True when the outcome matches expectation and nothing errored.
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.pass != self.expect_fail
    }

    pub fn is_window_error(&self) -> bool {
        self.error.as_deref().is_some_and(|e| e.starts_with("window too small"))
    }

    /// `PASS`, `XFAIL` (expected failure observed), `FAIL`, `XPASS` or `ERROR`.
    pub fn status(&self) -> &'static str {
        match (self.ok(), self.expect_fail) {
            (true, false) => "PASS",
            (true, true) => "XFAIL",
            (false, _) if self.error.is_some() => "ERROR",
            (false, false) => "FAIL",
            (false, true) => "XPASS",
        }
    }

    /// First recorded witness of failure, if any.
    pub fn witness(&self) -> Option<&Failure> {
        self.failures.first()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = self.status();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{status} {} [{}] ({})", self.name, self.tag, params.join(", "))?;
        if let Some(e) = &self.error {
            write!(f, ": {e}")?;
        } else if let Some(w) = self.witness() {
            write!(f, ": {} lhs={} rhs={}", w.location, w.lhs, w.rhs)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_failure_is_ok() {
        let w = Window { degree: 2, u_order: 4 };
        let mut r = CheckReport::new("x", "y", w).expecting_failure(true);
        r.compare("e", &QSeries::one(EXACT), &QSeries::zero(EXACT));
        assert!(!r.pass);
        assert!(r.ok());
        assert!(r.to_string().starts_with("XFAIL"));
    }

    #[test]
    fn short_window_fails() {
        let w = Window { degree: 2, u_order: 10 };
        let mut r = CheckReport::new("x", "y", w);
        r.compare("e", &QSeries::one(5), &QSeries::one(5));
        assert!(!r.pass);
        let mut r = CheckReport::new("x", "y", w);
        r.compare("e", &QSeries::one(12), &QSeries::one(EXACT));
        assert!(r.pass);
        assert_eq!(r.certified_u_order, Some(12));
    }
}
