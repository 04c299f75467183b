//! Certificate trees and the proof report they roll up into.
//!
//! A certificate records one verified claim: the checks that were replayed,
//! a digest of the inputs they were replayed on, and a JSON payload with the
//! computed values. The verdict of a node is `FAIL` if any of its own checks
//! or any child fails. `INFO` nodes are informational and never affect the
//! overall verdict.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Info => "INFO",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub what: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub id: String,
    pub claim: String,
    pub inputs_digest: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Value::is_null", default)]
    pub payload: Value,
    /// Preformatted text (tables, diagrams) for the text rendering.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub children: Vec<Certificate>,
    #[serde(skip)]
    informational: bool,
}

/// Short hex digest of the canonical JSON encoding of `inputs`.
pub fn digest<T: Serialize + ?Sized>(inputs: &T) -> String {
    let bytes = serde_json::to_vec(inputs).expect("inputs serialize");
    let hash = Sha256::digest(&bytes);
    hash.iter().take(8).fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl Certificate {
    pub fn new(id: impl Into<String>, claim: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            claim: claim.into(),
            inputs_digest: digest(&()),
            verdict: Verdict::Pass,
            checks: Vec::new(),
            payload: Value::Null,
            notes: Vec::new(),
            children: Vec::new(),
            informational: false,
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self.verdict = Verdict::Info;
        self
    }

    pub fn inputs<T: Serialize + ?Sized>(mut self, inputs: &T) -> Self {
        self.inputs_digest = digest(inputs);
        self
    }

    pub fn check(&mut self, what: impl Into<String>, holds: bool) -> bool {
        self.checks.push(Check {
            what: what.into(),
            holds,
        });
        self.refresh();
        holds
    }

    pub fn with_check(mut self, what: impl Into<String>, holds: bool) -> Self {
        self.check(what, holds);
        self
    }

    pub fn payload(mut self, payload: Value) -> Self {
        self.payload = payload;
        self
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn child(&mut self, child: Certificate) {
        self.children.push(child);
        self.refresh();
    }

    pub fn with_child(mut self, child: Certificate) -> Self {
        self.child(child);
        self
    }

    fn refresh(&mut self) {
        if self.informational {
            return;
        }
        let ok = self.checks.iter().all(|c| c.holds)
            && self.children.iter().all(|c| c.verdict != Verdict::Fail);
        self.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    /// Depth-first search for a node by id.
    pub fn find(&self, id: &str) -> Option<&Certificate> {
        if self.id == id {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(id))
    }

    /// Ids of failing leaves, depth-first.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_failures(&mut out);
        out
    }

    fn collect_failures(&self, out: &mut Vec<String>) {
        if self.verdict != Verdict::Fail {
            return;
        }
        let failing_children: Vec<_> = self
            .children
            .iter()
            .filter(|c| c.verdict == Verdict::Fail)
            .collect();
        if failing_children.is_empty() || self.checks.iter().any(|c| !c.holds) {
            out.push(self.id.clone());
        }
        for c in failing_children {
            c.collect_failures(out);
        }
    }

    fn render(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let _ = writeln!(
            out,
            "{pad}[{}] {}: {}",
            self.verdict.as_str(),
            self.id,
            self.claim
        );
        for c in &self.checks {
            let mark = if c.holds { "ok" } else { "FAILED" };
            let _ = writeln!(out, "{pad}    - {} ({mark})", c.what);
        }
        for n in &self.notes {
            for line in n.lines() {
                let _ = writeln!(out, "{pad}    | {line}");
            }
        }
        for c in &self.children {
            c.render(depth + 1, out);
        }
    }
}

/// The top-level record printed by the command-line tool.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofReport {
    pub schema: u32,
    pub command: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
    pub steps: Vec<Certificate>,
}

impl ProofReport {
    pub fn new(command: impl Into<String>, steps: Vec<Certificate>) -> Self {
        let verdict = if steps.iter().all(Certificate::passed) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            schema: SCHEMA_VERSION,
            command: command.into(),
            verdict,
            elapsed_ms: None,
            steps,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Steps that carry a verdict (excludes informational ones).
    pub fn verdict_steps(&self) -> impl Iterator<Item = &Certificate> {
        self.steps.iter().filter(|s| s.verdict != Verdict::Info)
    }

    pub fn find(&self, id: &str) -> Option<&Certificate> {
        self.steps.iter().find_map(|s| s.find(id))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} ({})", self.command, self.verdict.as_str());
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed: {ms} ms");
        }
        for s in &self.steps {
            s.render(0, &mut out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_rolls_up() {
        let leaf_ok = Certificate::new("a", "fine").with_check("1 = 1", true);
        let leaf_bad = Certificate::new("b", "broken").with_check("1 = 2", false);
        let info = Certificate::new("c", "remark").informational();
        let mut root = Certificate::new("root", "all");
        root.child(leaf_ok.clone());
        root.child(info);
        assert_eq!(root.verdict, Verdict::Pass);
        root.child(leaf_bad);
        assert_eq!(root.verdict, Verdict::Fail);
        assert_eq!(root.failures(), vec!["b".to_string()]);
        let report = ProofReport::new("x", vec![root, leaf_ok]);
        assert!(!report.passed());
        assert_eq!(report.verdict_steps().count(), 2);
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest(&[1, 2, 3]), digest(&[1, 2, 3]));
        assert_ne!(digest(&[1, 2, 3]), digest(&[1, 2, 4]));
        assert_eq!(digest(&()).len(), 16);
    }

    #[test]
    fn informational_nodes_never_fail() {
        let c = Certificate::new("i", "note")
            .informational()
            .with_check("irrelevant", false);
        assert_eq!(c.verdict, Verdict::Info);
        assert!(ProofReport::new("x", vec![c]).passed());
    }
}
