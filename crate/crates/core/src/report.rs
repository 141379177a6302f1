//! Verification reports and their JSON encoding.
//!
//! Keys are emitted in declaration order and every floating-point value is
//! printed with 17 significant digits, so a report is a deterministic
//! function of its inputs.

use std::collections::BTreeMap;

use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

/// A single named residual check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(serialize_with = "sci17")]
    pub residual: f64,
    #[serde(serialize_with = "sci17")]
    pub tol: f64,
    pub note: String,
}

impl Check {
    /// Passes iff `residual` is finite and `≤ tol`.
    pub fn residual(name: &str, residual: f64, tol: f64, note: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed: residual.is_finite() && residual <= tol,
            residual,
            tol,
            note: note.into(),
        }
    }

    /// Boolean check; residual is 0 on success and 1 on failure.
    pub fn flag(name: &str, ok: bool, note: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed: ok,
            residual: if ok { 0.0 } else { 1.0 },
            tol: 0.0,
            note: note.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    #[serde(serialize_with = "sci17_map")]
    pub metrics: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            params: BTreeMap::new(),
            checks: Vec::new(),
            metrics: BTreeMap::new(),
            warnings: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Records a real parameter with 17 significant digits.
    pub fn param_f64(&mut self, key: &str, value: f64) -> &mut Self {
        self.param(key, format_f64(value))
    }

    pub fn metric(&mut self, key: &str, value: f64) -> &mut Self {
        self.metrics.insert(key.to_string(), value);
        self
    }

    pub fn warn(&mut self, message: impl Into<String>) -> &mut Self {
        self.warnings.push(message.into());
        self
    }

    pub fn push(&mut self, check: Check) -> &mut Self {
        self.summary.total += 1;
        if check.passed {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        self.checks.push(check);
        self
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) -> &mut Self {
        for c in checks {
            self.push(c);
        }
        self
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

/// JSON array of reports, in the given order.
pub fn reports_to_json(reports: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("report serialization is infallible")
}

/// `{:.16e}` formatting: 17 significant digits.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub(crate) fn sci17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return s.serialize_none();
    }
    let raw = RawValue::from_string(format_f64(*x)).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

fn sci17_map<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        struct Sci(f64);
        impl Serialize for Sci {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                sci17(&self.0, s)
            }
        }
        map.serialize_entry(k, &Sci(*v))?;
    }
    map.end()
}
