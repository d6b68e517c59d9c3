use serde::Serialize;
use std::fmt;

/// How a check obtained its measured value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MonteCarlo,
    Quadrature,
    Series,
    FiniteDifference,
}

/// Outcome of one check, serialized as one JSON line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub measured: f64,
    pub expected: f64,
    pub tol: f64,
    pub passed: bool,
    pub method: Method,
}

impl VerificationReport {
    /// `passed` is `|measured - expected| <= tol`; any non-finite input fails.
    pub fn new(check: impl Into<String>, measured: f64, expected: f64, tol: f64, method: Method) -> Self {
        let passed = measured.is_finite()
            && expected.is_finite()
            && tol.is_finite()
            && (measured - expected).abs() <= tol;
        VerificationReport {
            check: check.into(),
            measured,
            expected,
            tol,
            passed,
            method,
        }
    }

    /// A failed report for a check that could not be carried out.
    pub fn broken(check: impl Into<String>, method: Method) -> Self {
        VerificationReport {
            check: check.into(),
            measured: f64::NAN,
            expected: 0.0,
            tol: 0.0,
            passed: false,
            method,
        }
    }

    /// JSON line; non-finite numbers become `null`.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: measured {:.6e}, expected {:.6e}, tol {:.1e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.check,
            self.measured,
            self.expected,
            self.tol
        )
    }
}
