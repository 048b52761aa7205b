//! Check reports: pass/fail with witnesses, rendered as JSON or text.

use std::collections::BTreeMap;

use serde::Serialize;

/// Outcome of one named check on one model (and optionally one profile).
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub model: String,
    pub profile: Option<String>,
    pub check: String,
    pub status: CheckStatus,
    pub samples: usize,
    pub witnesses: Vec<String>,
    pub values: BTreeMap<String, String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CheckStatus {
    Pass,
    Fail,
}

impl CheckReport {
    pub fn new(model: String, profile: Option<String>, check: String) -> Self {
        CheckReport {
            model,
            profile,
            check,
            status: CheckStatus::Pass,
            samples: 0,
            witnesses: Vec::new(),
            values: BTreeMap::new(),
        }
    }

    /// Records a verbatim counterexample and flips the status.
    pub fn fail(&mut self, witness: String) {
        self.status = CheckStatus::Fail;
        self.witnesses.push(witness);
    }

    pub fn pass_one(&mut self) {
        self.samples += 1;
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    /// Folds a sub-report into this one.
    pub fn merge(&mut self, other: CheckReport) {
        self.samples += other.samples;
        if other.status == CheckStatus::Fail {
            self.status = CheckStatus::Fail;
        }
        self.witnesses.extend(other.witnesses);
        for (k, v) in other.values {
            self.values.entry(k).or_insert(v);
        }
    }

    /// One aligned text line per report.
    pub fn render_line(&self) -> String {
        let profile = self.profile.as_deref().unwrap_or("-");
        let status = match self.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
        };
        format!(
            "{status}  {model:<8} {profile:<16} {check:<22} samples={samples}{extra}",
            model = self.model,
            check = self.check,
            samples = self.samples,
            extra = if self.witnesses.is_empty() {
                String::new()
            } else {
                format!("  witnesses={}", self.witnesses.len())
            }
        )
    }
}
