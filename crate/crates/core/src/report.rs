//! Machine-readable verification reports: one record per check, carrying the
//! verdict, the source citation, an optional witness expression, and the
//! hashes of every embedded fixture the run depended on.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;
use serde::Serialize;

use crate::algebra::presets::{fixture_sha256, fixture_text, FIXTURES};

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

/// Whether a check gates the exit code. Asserted checks verify claims the
/// source states outright; adjudication checks record verdicts on questions
/// the source leaves ambiguous or that the engine refutes, and only gate
/// under strict mode.
#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum Gating {
    Asserted,
    Adjudication,
}

#[derive(Serialize, Clone)]
pub struct CheckRecord {
    pub id: String,
    pub citation: String,
    pub verdict: Verdict,
    pub gating: Gating,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub millis: u128,
}

#[derive(Serialize)]
pub struct Report {
    pub suite: String,
    pub engine_version: String,
    pub fixtures: BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
}

#[derive(Deserialize)]
struct CitationsFile {
    checks: BTreeMap<String, String>,
}

fn citations() -> &'static BTreeMap<String, String> {
    static FILE: OnceLock<CitationsFile> = OnceLock::new();
    &FILE
        .get_or_init(|| {
            serde_json::from_str(fixture_text("citations.json"))
                .expect("citations.json is well formed")
        })
        .checks
}

/// The source citation for a check id.
pub fn citation(id: &str) -> String {
    citations()
        .get(id)
        .unwrap_or_else(|| panic!("check id `{id}` has no citation"))
        .clone()
}

impl Report {
    pub fn new(suite: &str, checks: Vec<CheckRecord>) -> Self {
        let fixtures = FIXTURES
            .iter()
            .map(|(name, _)| (name.to_string(), fixture_sha256(name)))
            .collect();
        Report {
            suite: suite.to_string(),
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            fixtures,
            checks,
        }
    }

    /// True when the run should exit cleanly: every asserted check passed,
    /// and under strict mode every check of any class passed.
    pub fn gate_ok(&self, strict: bool) -> bool {
        self.checks.iter().all(|c| {
            c.verdict == Verdict::Pass || (!strict && c.gating == Gating::Adjudication)
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} (engine {})\n", self.suite, self.engine_version);
        for c in &self.checks {
            let verdict = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Indeterminate => "????",
            };
            let gating = match c.gating {
                Gating::Asserted => "asserted",
                Gating::Adjudication => "adjudication",
            };
            out.push_str(&format!(
                "  {verdict}  {:>12}  {:<36}  {} ({} ms)\n",
                gating, c.id, c.citation, c.millis
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!("          witness: {w}\n"));
            }
            if let Some(n) = &c.notes {
                out.push_str(&format!("          note: {n}\n"));
            }
        }
        let passed = self.checks.iter().filter(|c| c.verdict == Verdict::Pass).count();
        let failed_gating = self
            .checks
            .iter()
            .filter(|c| c.verdict != Verdict::Pass && c.gating == Gating::Asserted)
            .count();
        out.push_str(&format!(
            "summary: {} checks, {} pass, {} fail ({} gating)\n",
            self.checks.len(),
            passed,
            self.checks.len() - passed,
            failed_gating
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_citation_id_is_well_formed() {
        for (id, text) in citations() {
            assert!(id.contains('.'), "id `{id}` lacks a suite prefix");
            assert!(!text.is_empty());
        }
    }

    #[test]
    fn report_gates_on_asserted_failures_only() {
        let rec = |gating, verdict| CheckRecord {
            id: "x.y".into(),
            citation: "c".into(),
            verdict,
            gating,
            witness: None,
            notes: None,
            millis: 0,
        };
        let r = Report::new("t", vec![rec(Gating::Adjudication, Verdict::Fail)]);
        assert!(r.gate_ok(false));
        assert!(!r.gate_ok(true));
        let r = Report::new("t", vec![rec(Gating::Asserted, Verdict::Fail)]);
        assert!(!r.gate_ok(false));
        let r = Report::new("t", vec![rec(Gating::Asserted, Verdict::Pass)]);
        assert!(r.gate_ok(true));
        assert!(!r.fixtures.is_empty());
    }
}
