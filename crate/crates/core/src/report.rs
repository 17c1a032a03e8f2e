//! Structured pass/fail reports, serialized as JSON with a stable field
//! order.
//!
//! Two shapes are used throughout the library and the CLI:
//!
//! - [`CheckReport`] for numeric invariant suites (`{"check": …, "dims": …,
//!   "seed": …, "trials": …, "maxResidual": …, "pass": …}`), and
//! - [`RelationReport`] for group-relation checks (`{"relation": …, "n": …,
//!   "holds": …, "order": …}`).

use serde::{Deserialize, Serialize};

/// Outcome of one numeric verification: which check ran, on which fiber
/// dimensions, with which seed and trial count, the worst residual seen,
/// and whether everything passed.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub dims: Vec<usize>,
    pub seed: u64,
    pub trials: usize,
    #[serde(rename = "maxResidual")]
    pub max_residual: f64,
    pub pass: bool,
}

impl CheckReport {
    /// A passing report with zero residual (exact checks).
    pub fn exact(check: impl Into<String>, dims: Vec<usize>, seed: u64, trials: usize) -> Self {
        CheckReport {
            check: check.into(),
            dims,
            seed,
            trials,
            max_residual: 0.0,
            pass: true,
        }
    }

    /// Record a residual, failing the report if it exceeds `tol`.
    pub fn record(&mut self, residual: f64, tol: f64) {
        let r = residual.abs();
        if r > self.max_residual {
            self.max_residual = r;
        }
        if r > tol {
            self.pass = false;
        }
    }
}

/// Outcome of verifying one group relation by action or enumeration.
/// `order` is the order of the word's image where it was computed, and
/// `null` otherwise.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RelationReport {
    pub relation: String,
    pub n: usize,
    pub holds: bool,
    pub order: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_report_json_field_names() {
        let r = CheckReport::exact("demo", vec![2, 3, 2], 0, 10);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"check":"demo","dims":[2,3,2],"seed":0,"trials":10,"maxResidual":0.0,"pass":true}"#
        );
    }

    #[test]
    fn relation_report_json_field_names() {
        let r = RelationReport {
            relation: "(XYZ)^4".into(),
            n: 3,
            holds: true,
            order: Some(4),
        };
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"relation":"(XYZ)^4","n":3,"holds":true,"order":4}"#
        );
    }

    #[test]
    fn record_tracks_worst_residual_and_pass() {
        let mut r = CheckReport::exact("demo", vec![1], 7, 3);
        r.record(1e-15, 1e-12);
        assert!(r.pass);
        r.record(1e-3, 1e-12);
        assert!(!r.pass);
        assert!((r.max_residual - 1e-3).abs() < 1e-18);
    }
}
