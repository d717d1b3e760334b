//! Structured, deterministic check reports shared by the library and CLI.

use serde::Serialize;

/// Outcome of one check. `Skipped` means the check's hypotheses were not
/// met on this instance; it is never a failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Holds,
    Fails,
    Skipped,
}

/// One verified statement: what was checked, under which hypotheses, and
/// what came out. `runtime_ms` stays 0 unless timings were explicitly
/// requested, so reruns are byte-identical.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub law: String,
    pub hypotheses: Vec<String>,
    pub verdict: Verdict,
    /// Counterexample data for failures, the reason for skips, and any
    /// certificates (counts, bounds) worth keeping for passing checks.
    pub witnesses: Vec<String>,
    pub runtime_ms: u128,
}

impl CheckRecord {
    pub fn holds(name: impl Into<String>, law: impl Into<String>) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            law: law.into(),
            hypotheses: Vec::new(),
            verdict: Verdict::Holds,
            witnesses: Vec::new(),
            runtime_ms: 0,
        }
    }

    pub fn fails(
        name: impl Into<String>,
        law: impl Into<String>,
        witness: impl Into<String>,
    ) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            law: law.into(),
            hypotheses: Vec::new(),
            verdict: Verdict::Fails,
            witnesses: vec![witness.into()],
            runtime_ms: 0,
        }
    }

    pub fn skipped(
        name: impl Into<String>,
        law: impl Into<String>,
        reason: impl Into<String>,
    ) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            law: law.into(),
            hypotheses: Vec::new(),
            verdict: Verdict::Skipped,
            witnesses: vec![reason.into()],
            runtime_ms: 0,
        }
    }

    /// Build from a computed boolean with a witness used only on failure.
    pub fn from_outcome(
        name: impl Into<String>,
        law: impl Into<String>,
        ok: bool,
        witness: impl Into<String>,
    ) -> CheckRecord {
        if ok {
            Self::holds(name, law)
        } else {
            Self::fails(name, law, witness)
        }
    }

    pub fn with_hypotheses(mut self, hypotheses: Vec<String>) -> CheckRecord {
        self.hypotheses = hypotheses;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> CheckRecord {
        self.witnesses.push(note.into());
        self
    }
}

/// A titled list of check records for one instance.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub title: String,
    pub instance: String,
    pub records: Vec<CheckRecord>,
}

impl ReportDocument {
    pub fn new(title: impl Into<String>, instance: impl Into<String>) -> ReportDocument {
        ReportDocument {
            title: title.into(),
            instance: instance.into(),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn failures(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.verdict == Verdict::Fails)
            .count()
    }

    pub fn all_ok(&self) -> bool {
        self.failures() == 0
    }

    /// Deterministic single-line-per-record rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {} — {}\n", self.title, self.instance));
        for r in &self.records {
            let tag = match r.verdict {
                Verdict::Holds => "HOLDS",
                Verdict::Fails => "FAILS",
                Verdict::Skipped => "SKIP ",
            };
            out.push_str(&format!("[{tag}] {}: {}", r.name, r.law));
            if !r.hypotheses.is_empty() {
                out.push_str(&format!(" | hypotheses: {}", r.hypotheses.join("; ")));
            }
            if !r.witnesses.is_empty() {
                out.push_str(&format!(" | {}", r.witnesses.join("; ")));
            }
            if r.runtime_ms > 0 {
                out.push_str(&format!(" | {} ms", r.runtime_ms));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

// ----------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_is_deterministic_and_complete() {
        let mut doc = ReportDocument::new("suite", "Z/6");
        doc.push(CheckRecord::holds("a", "x = x"));
        doc.push(CheckRecord::fails("b", "y = 0", "y = 3"));
        doc.push(
            CheckRecord::skipped("c", "needs n ≥ 2", "n = 1")
                .with_hypotheses(vec!["n ≥ 2".into()]),
        );
        assert_eq!(doc.failures(), 1);
        assert!(!doc.all_ok());
        let once = doc.render_text();
        let twice = doc.render_text();
        assert_eq!(once, twice);
        assert!(once.contains("[HOLDS] a"));
        assert!(once.contains("[FAILS] b: y = 0 | y = 3"));
        assert!(once.contains("[SKIP ] c"));
        assert!(once.contains("hypotheses: n ≥ 2"));
        let json = doc.to_json();
        assert!(json.contains("\"verdict\": \"Fails\""));
    }
}
