//! Machine-readable run reports.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::suites::SuiteResult;

#[derive(Debug, Clone, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub engines: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<SuiteResult>,
    pub passed: usize,
    pub failed: usize,
}

pub fn digest(input: &str) -> String {
    let d = Sha256::digest(input.as_bytes());
    d.iter().map(|b| format!("{b:02x}")).collect()
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport { command: command.into(), ..Default::default() }
    }

    pub fn with_suites(mut self, suites: Vec<SuiteResult>) -> Self {
        self.passed = suites.iter().map(|s| s.passed).sum();
        self.failed = suites.iter().map(|s| s.failed).sum();
        self.suites = suites;
        self
    }

    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// One line per suite, then the failures.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let tag = if s.ok() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {}: {} passed, {} failed\n", s.name, s.passed, s.failed));
            for n in &s.notes {
                out.push_str(&format!("  {n}\n"));
            }
            for f in &s.failures {
                out.push_str(&format!("  failure {}: {}\n", f.case, f.detail));
                for l in f.diagram.lines() {
                    out.push_str(&format!("    {l}\n"));
                }
            }
        }
        out
    }
}
