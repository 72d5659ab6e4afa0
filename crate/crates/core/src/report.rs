//! Estimates, identity checks, and the JSON verification report.

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    PartialSum,
    AcceleratedSum,
    EulerProduct,
    ClosedForm,
    /// Richardson-extrapolated partial sums.
    Extrapolated,
    Quadrature,
    Recurrence,
    /// Exact integer enumeration over a finite field.
    Enumeration,
    /// A product of two estimates obtained by different methods.
    Composite,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::PartialSum => "partial_sum",
            Method::AcceleratedSum => "accelerated_sum",
            Method::EulerProduct => "euler_product",
            Method::ClosedForm => "closed_form",
            Method::Extrapolated => "extrapolated",
            Method::Quadrature => "quadrature",
            Method::Recurrence => "recurrence",
            Method::Enumeration => "enumeration",
            Method::Composite => "composite",
        }
    }
}

/// A numerical value with provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesEstimate {
    pub value: f64,
    pub s: Option<f64>,
    pub method: Method,
    /// Terms N, prime bound P, or 0 for closed forms.
    pub cutoff: u64,
    pub error_proxy: f64,
}

impl SeriesEstimate {
    pub fn closed_form(value: f64, s: Option<f64>) -> Self {
        Self {
            value,
            s,
            method: Method::ClosedForm,
            cutoff: 0,
            error_proxy: 0.0,
        }
    }

    pub fn exact(value: f64, method: Method, cutoff: u64) -> Self {
        Self {
            value,
            s: None,
            method,
            cutoff,
            error_proxy: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub identity_id: String,
    pub lhs: SeriesEstimate,
    pub rhs: SeriesEstimate,
    pub tolerance: f64,
    pub passed: bool,
}

impl IdentityCheck {
    pub fn new(id: impl Into<String>, lhs: SeriesEstimate, rhs: SeriesEstimate, tolerance: f64) -> Self {
        let passed = (lhs.value - rhs.value).abs() <= tolerance;
        Self {
            identity_id: id.into(),
            lhs,
            rhs,
            tolerance,
            passed,
        }
    }

    pub fn abs_diff(&self) -> f64 {
        (self.lhs.value - self.rhs.value).abs()
    }

    pub fn s(&self) -> Option<f64> {
        self.lhs.s.or(self.rhs.s)
    }

    /// One line for terminal output.
    pub fn summary(&self) -> String {
        format!(
            "[{}] {}: |{:.15e} - {:.15e}| = {:.3e} (tol {:.1e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.identity_id,
            self.lhs.value,
            self.rhs.value,
            self.abs_diff(),
            self.tolerance
        )
    }
}

impl Serialize for IdentityCheck {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("IdentityCheck", 10)?;
        st.serialize_field("identity_id", &self.identity_id)?;
        st.serialize_field("s", &self.s())?;
        st.serialize_field("lhs", &self.lhs.value)?;
        st.serialize_field("rhs", &self.rhs.value)?;
        st.serialize_field("abs_diff", &self.abs_diff())?;
        st.serialize_field("tolerance", &self.tolerance)?;
        st.serialize_field("method_lhs", self.lhs.method.as_str())?;
        st.serialize_field("method_rhs", self.rhs.method.as_str())?;
        st.serialize_field("cutoff", &self.lhs.cutoff.max(self.rhs.cutoff))?;
        st.serialize_field("passed", &self.passed)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<IdentityCheck>,
    /// Conventions the checks depend on.
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, checks: Vec<IdentityCheck>, notes: Vec<String>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self {
            suite: suite.into(),
            passed,
            checks,
            notes,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_within_tolerance() {
        let a = SeriesEstimate::closed_form(1.0, Some(1.0));
        let b = SeriesEstimate::closed_form(1.0 + 1e-9, Some(1.0));
        assert!(IdentityCheck::new("x", a, b, 1e-8).passed);
        assert!(!IdentityCheck::new("x", a, b, 1e-10).passed);
    }

    #[test]
    fn json_schema_fields() {
        let a = SeriesEstimate {
            value: 0.5,
            s: Some(2.0),
            method: Method::PartialSum,
            cutoff: 100,
            error_proxy: 1e-3,
        };
        let b = SeriesEstimate::closed_form(0.5, Some(2.0));
        let check = IdentityCheck::new("demo", a, b, 1e-10);
        let v: serde_json::Value = serde_json::to_value(&check).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        for k in ["identity_id", "s", "lhs", "rhs", "abs_diff", "tolerance", "method_lhs", "method_rhs", "cutoff", "passed"] {
            assert!(keys.contains(&k), "{k}");
        }
        assert_eq!(v["method_lhs"], "partial_sum");
        assert_eq!(v["cutoff"], 100);
        assert_eq!(v["passed"], true);
    }
}
