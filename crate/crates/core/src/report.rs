//! Probe outcome types shared by the library and the command-line front end.

use serde::Serialize;

/// One violated check inside a probe run.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    /// Which case produced the violation (pair, triple, sample index...).
    pub case: String,
    /// Human-readable description of the failed inequality or mismatch.
    pub detail: String,
    /// Signed slack of the violated check; negative means violated.
    pub slack: f64,
}

/// Outcome of one probe over one construction.
///
/// `violations` is empty exactly when every evaluated slack clears the
/// probe's tolerance; `min_slack` is the smallest finite slack seen, so a
/// passing report documents its safety margin.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub construction: String,
    pub probe: String,
    /// Number of evaluated cases (after skips).
    pub cases: usize,
    /// Cases skipped under extended-real conventions or emptiness.
    pub skipped: usize,
    pub violations: Vec<Violation>,
    pub min_slack: Option<f64>,
}

impl ProbeReport {
    pub fn new(construction: impl Into<String>, probe: impl Into<String>) -> Self {
        ProbeReport {
            construction: construction.into(),
            probe: probe.into(),
            cases: 0,
            skipped: 0,
            violations: Vec::new(),
            min_slack: None,
        }
    }

    /// Records one evaluated case with a finite slack; slacks below `-tol`
    /// are violations.
    pub fn record_slack(&mut self, case: &str, detail: &str, slack: f64, tol: f64) {
        self.cases += 1;
        self.min_slack = Some(self.min_slack.map_or(slack, |m| m.min(slack)));
        if slack < -tol {
            self.violations.push(Violation {
                case: case.to_string(),
                detail: detail.to_string(),
                slack,
            });
        }
    }

    /// Records a case decided without a meaningful finite slack.
    pub fn record_outcome(&mut self, case: &str, detail: &str, ok: bool) {
        self.cases += 1;
        if !ok {
            self.violations.push(Violation {
                case: case.to_string(),
                detail: detail.to_string(),
                slack: f64::NEG_INFINITY,
            });
        }
    }

    pub fn record_skip(&mut self) {
        self.skipped += 1;
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Grouping of a polygon family under one equivalence notion.
#[derive(Clone, Debug, Serialize)]
pub struct ShapeClassReport {
    /// Which equivalence produced the classes.
    pub notion: String,
    /// Labels of the family members, parallel to the classified input.
    pub labels: Vec<String>,
    /// Each class lists member indices; the first member is the representative.
    pub classes: Vec<Vec<usize>>,
}

impl ShapeClassReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn violations_and_min_slack_agree() {
        let mut r = ProbeReport::new("demo", "probe");
        r.record_slack("a", "fine", 0.5, 1e-9);
        r.record_slack("b", "fine", 0.2, 1e-9);
        assert!(r.passed());
        assert_eq!(r.min_slack, Some(0.2));
        // Within tolerance of zero is not a violation.
        r.record_slack("c", "boundary", -1e-12, 1e-9);
        assert!(r.passed());
        r.record_slack("d", "broken", -0.1, 1e-9);
        assert!(!r.passed());
        assert_eq!(r.min_slack, Some(-0.1));
        assert_eq!(r.cases, 4);
    }
}
