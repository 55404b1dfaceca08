use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::LaurentSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Proved,
    Conjectural,
    /// Conjectured elsewhere; here only its equality with a proved form.
    ConjecturalExternal,
    Classical,
    InternalCrosscheck,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Proved => "proved",
            Status::Conjectural => "conjectural",
            Status::ConjecturalExternal => "conjectural-external",
            Status::Classical => "classical",
            Status::InternalCrosscheck => "internal-crosscheck",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// First disagreement between two sides. Coefficients are decimal strings
/// so that nothing is lost in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub exp: i64,
    pub lhs: String,
    pub rhs: String,
    /// Where in a family of checks the disagreement occurred (`N=7`,
    /// `x^4`, `k=3,M=5`, ...).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<String>,
}

impl Mismatch {
    pub fn with_context(mut self, at: impl Into<String>) -> Self {
        self.at = Some(at.into());
        self
    }
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(at) = &self.at {
            write!(f, "at {at}: ")?;
        }
        write!(f, "q^{}: lhs {} rhs {}", self.exp, self.lhs, self.rhs)
    }
}

/// Compares two series below `order`. Fails rather than passing silently
/// if either side is not known that far.
pub fn compare(lhs: &LaurentSeries, rhs: &LaurentSeries, order: i64) -> Result<Option<Mismatch>> {
    let got = lhs.prec().min(rhs.prec());
    if got < order {
        return Err(Error::InsufficientPrecision { wanted: order, got });
    }
    Ok(lhs.first_mismatch(rhs, order).map(|(exp, a, b)| Mismatch {
        exp,
        lhs: a.to_string(),
        rhs: b.to_string(),
        at: None,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub status: Status,
    pub order: i64,
    pub passed: bool,
    pub first_mismatch: Option<Mismatch>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(id: impl Into<String>, status: Status, order: i64, mismatch: Option<Mismatch>, elapsed_ms: u64) -> Self {
        Self {
            id: id.into(),
            status,
            order,
            passed: mismatch.is_none(),
            first_mismatch: mismatch,
            elapsed_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::BadParameter(format!("report JSON: {e}")))
    }

    /// One table row; timings only on request so that output is reproducible.
    pub fn text_line(&self, timings: bool) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!("{verdict}  {:<28} {:<21} order {}", self.id, self.status, self.order);
        if let Some(m) = &self.first_mismatch {
            line.push_str(&format!("  [{m}]"));
        }
        if timings {
            line.push_str(&format!("  {} ms", self.elapsed_ms));
        }
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let r = VerificationReport::new(
            "C:H9",
            Status::Conjectural,
            100,
            Some(Mismatch {
                exp: 17,
                lhs: "123456789012345678901234567890".into(),
                rhs: "-4".into(),
                at: Some("N=3".into()),
            }),
            12,
        );
        let s = r.to_json();
        assert!(s.contains("\"status\":\"conjectural\""));
        assert_eq!(VerificationReport::from_json(&s).unwrap(), r);
        let ok = VerificationReport::new("SEC6", Status::Conjectural, 5, None, 0);
        assert!(ok.to_json().contains("\"first_mismatch\":null"));
    }

    #[test]
    fn compare_refuses_short_series() {
        let a = LaurentSeries::one(5);
        assert!(matches!(compare(&a, &a, 10), Err(Error::InsufficientPrecision { .. })));
        let b = LaurentSeries::from_terms(&[(1, 0), (2, 3)], 5);
        let m = compare(&a, &b, 5).unwrap().unwrap();
        assert_eq!((m.exp, m.lhs.as_str(), m.rhs.as_str()), (3, "0", "2"));
    }
}
