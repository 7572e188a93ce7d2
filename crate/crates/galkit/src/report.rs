//! Structured pass/fail records with witnesses, plus the deterministic
//! text/JSON emitters used by the CLI.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::Fail => write!(f, "fail"),
            CheckStatus::Skipped => write!(f, "skipped"),
        }
    }
}

/// One verification result. A failing report always carries at least one
/// witness describing a concrete counterexample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub status: CheckStatus,
    pub witnesses: Vec<String>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn is_pass(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

/// Accumulates parameters and witnesses while a check runs, then stamps the
/// elapsed time.
pub struct ReportBuilder {
    check: String,
    params: BTreeMap<String, String>,
    witnesses: Vec<String>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(check: &str) -> Self {
        ReportBuilder {
            check: check.to_string(),
            params: BTreeMap::new(),
            witnesses: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn witness(&mut self, w: impl Into<String>) {
        self.witnesses.push(w.into());
    }

    pub fn finish(self, status: CheckStatus) -> CheckReport {
        debug_assert!(
            status != CheckStatus::Fail || !self.witnesses.is_empty(),
            "failing reports must carry a counterexample witness"
        );
        CheckReport {
            check: self.check,
            params: self.params,
            status,
            witnesses: self.witnesses,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }

    pub fn finish_bool(self, ok: bool) -> CheckReport {
        self.finish(if ok { CheckStatus::Pass } else { CheckStatus::Fail })
    }
}

/// Deterministic plain-text rendering: one status line per report followed by
/// indented witnesses.
pub fn emit_text(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let params = r
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!(
            "[{}] {}{}{} ({} ms)\n",
            r.status,
            r.check,
            if params.is_empty() { "" } else { " " },
            params,
            r.elapsed_ms
        ));
        for w in &r.witnesses {
            out.push_str(&format!("    {w}\n"));
        }
    }
    out
}

/// JSON rendering: a top-level array of report objects.
pub fn emit_json(reports: &[CheckReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

pub fn parse_reports(json: &str) -> Result<Vec<CheckReport>> {
    serde_json::from_str(json).map_err(|e| Error::Parse(format!("bad report JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let mut b = ReportBuilder::new("demo").param("d", 5);
        b.witness("prime=3");
        let report = b.finish(CheckStatus::Pass);
        let json = emit_json(&[report.clone()]);
        let back = parse_reports(&json).unwrap();
        assert_eq!(back, vec![report]);
    }

    #[test]
    fn empty_list_is_json_array() {
        assert_eq!(emit_json(&[]), "[]");
    }

    #[test]
    fn text_format_lists_witnesses() {
        let mut b = ReportBuilder::new("demo").param("p", 3);
        b.witness("counterexample");
        let text = emit_text(&[b.finish(CheckStatus::Fail)]);
        assert!(text.starts_with("[fail] demo p=3"));
        assert!(text.contains("    counterexample\n"));
    }
}
