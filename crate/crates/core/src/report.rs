//! Check records, suite reports and the convention block embedded in every
//! emitted report.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, witness: Value) -> Check {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: &str) -> Check {
        Check {
            name: name.into(),
            status: Status::Skipped,
            witness: serde_json::json!({ "reason": reason }),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Fixed conventions so that reports from different builds can be compared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convention {
    pub generator_ordering: &'static str,
    pub two_form_slots: &'static str,
    pub star_orientation: &'static str,
    pub derivative_normalization: &'static str,
    pub pullback: &'static str,
}

pub const CONVENTION: Convention = Convention {
    generator_ordering: "index 4a+0,4a+1,4a+2,4a+3 = a,b,c,d of quaternionic coordinate a",
    two_form_slots: "Omega_A(X, Y) = <X, A Y>; coefficient of e_r^e_c is A[c][r]",
    star_orientation: "e_S ^ *e_S = vol = e_0 ^ ... ^ e_{4n-1}",
    derivative_normalization: "d/dx_j e_xi = i xi_j e_xi (2 pi absorbed)",
    pullback: "(g* a)(v_1, ..., v_p) = a(g v_1, ..., g v_p)",
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

/// Outcome of a verification suite. Everything except `timing` is a
/// function of the run configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: Value,
    pub convention: Convention,
    pub checks: Vec<Check>,
    pub overall: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, config: Value, checks: Vec<Check>) -> SuiteReport {
        let overall = if checks.iter().all(Check::passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        SuiteReport {
            suite: suite.into(),
            config,
            convention: CONVENTION,
            checks,
            overall,
            timing: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    /// JSON with the timing field removed, for reproducibility comparisons.
    pub fn to_json_without_timing(&self) -> String {
        let mut r = self.clone();
        r.timing = None;
        r.to_json()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn overall_status() {
        let ok = SuiteReport::new(
            "x",
            json!({}),
            vec![Check::new("a", true, json!(1)), Check::skipped("b", "n/a")],
        );
        assert!(ok.passed());
        let bad = SuiteReport::new("x", json!({}), vec![Check::new("a", false, json!(1))]);
        assert!(!bad.passed());
        assert_eq!(bad.failures().count(), 1);
    }

    #[test]
    fn timing_is_excluded() {
        let mut r = SuiteReport::new("x", json!({}), vec![]);
        let plain = r.to_json_without_timing();
        r.timing = Some(Timing { elapsed_ms: 12 });
        assert!(r.to_json().contains("elapsed_ms"));
        assert_eq!(r.to_json_without_timing(), plain);
        assert!(plain.contains("\"overall\": \"pass\""));
    }
}
