use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// Outcome of a verification suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub status: Status,
    pub summary: String,
    pub payload: Value,
}

impl Report {
    pub fn new(name: &str, ok: bool, summary: impl Into<String>, payload: Value) -> Self {
        Report {
            name: name.to_owned(),
            status: if ok { Status::Pass } else { Status::Fail },
            summary: summary.into(),
            payload,
        }
    }

    pub fn error(name: &str, err: &Error) -> Self {
        Report {
            name: name.to_owned(),
            status: Status::Error,
            summary: err.to_string(),
            payload: json!({ "error": err.to_string() }),
        }
    }

    /// Wrap a fallible suite so domain errors become `error` reports.
    pub fn from_result(name: &str, r: crate::error::Result<Report>) -> Self {
        r.unwrap_or_else(|e| Report::error(name, &e))
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Passes iff every part passes; an error part makes the whole an error.
    pub fn combine(name: &str, parts: Vec<Report>) -> Self {
        let status = if parts.iter().any(|r| r.status == Status::Error) {
            Status::Error
        } else if parts.iter().all(Report::passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        let failed: Vec<&str> = parts
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.name.as_str())
            .collect();
        let summary = if failed.is_empty() {
            format!("{} checks passed", parts.len())
        } else {
            format!("{} of {} checks failed: {}", failed.len(), parts.len(), failed.join(", "))
        };
        Report {
            name: name.to_owned(),
            status,
            summary,
            payload: json!({ "checks": parts }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combine_status() {
        let a = Report::new("a", true, "ok", Value::Null);
        let b = Report::new("b", false, "bad", Value::Null);
        assert!(Report::combine("all", vec![a.clone(), a.clone()]).passed());
        let mixed = Report::combine("all", vec![a.clone(), b]);
        assert_eq!(mixed.status, Status::Fail);
        assert!(mixed.summary.contains('b'));
        let e = Report::error("e", &Error::Singular);
        assert_eq!(Report::combine("all", vec![a, e]).status, Status::Error);
    }

    #[test]
    fn status_json() {
        let r = Report::new("x", true, "", json!({}));
        assert_eq!(serde_json::to_value(&r).unwrap()["status"], "pass");
    }
}
