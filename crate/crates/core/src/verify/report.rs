use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use super::Identity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One evaluated identity instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCase {
    pub identity: Identity,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl IdentityCase {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub campaign: String,
    pub cases: Vec<IdentityCase>,
    pub summary: Summary,
}

impl Report {
    pub fn new(campaign: impl Into<String>, cases: Vec<IdentityCase>) -> Self {
        let mut summary = Summary::default();
        for c in &cases {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Report { campaign: campaign.into(), cases, summary }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCase> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }
}
