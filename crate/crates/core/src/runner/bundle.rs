use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::{Check, TheoremReport, Uniqueness};

/// The run settings echoed at the top of every bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub corpus: Vec<String>,
    pub bound: u64,
    pub seed: u64,
    pub tasks: Vec<String>,
    pub timing: bool,
}

/// One verification outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub inputs: Vec<String>,
    pub pass: bool,
    /// First failing check, or the error that stopped the check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constructed: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uniqueness: Option<Uniqueness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Record {
    pub fn from_report(r: TheoremReport) -> Self {
        Self {
            pass: r.pass(),
            witness: r.first_failure().map(Check::to_string),
            id: r.id,
            inputs: r.inputs,
            checks: r.checks,
            constructed: r.witnesses,
            uniqueness: r.uniqueness,
            notes: r.notes,
            timing_ms: None,
        }
    }

    /// A FAIL record for a check that could not run; the witness names the
    /// error variant.
    pub fn error<E: std::fmt::Debug + std::fmt::Display>(id: impl Into<String>, inputs: Vec<String>, e: &E) -> Self {
        Self {
            id: id.into(),
            inputs,
            pass: false,
            witness: Some(format!("{}: {e}", error_kind(e))),
            checks: Vec::new(),
            constructed: Vec::new(),
            uniqueness: None,
            notes: Vec::new(),
            timing_ms: None,
        }
    }
}

/// Variant name of an error, read off its `Debug` form. Transparent
/// wrappers are unwrapped.
pub fn error_kind<E: std::fmt::Debug>(e: &E) -> String {
    let debug = format!("{e:?}");
    let mut rest = debug.as_str();
    loop {
        let end = rest.find(['(', ' ', '{']).unwrap_or(rest.len());
        let head = &rest[..end];
        let inner = rest[end..].strip_prefix('(');
        match inner {
            Some(tail) if tail.chars().next().is_some_and(|c| c.is_ascii_uppercase()) && matches!(head, "Morphism" | "Group" | "Ring" | "Category" | "Semilinear" | "Theorem" | "Io") => {
                rest = tail;
            }
            _ => return head.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Everything a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportBundle {
    pub config: ConfigEcho,
    pub records: Vec<Record>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Line {
    Config(ConfigEcho),
    Record(Record),
    Summary(Summary),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing {0} line")]
    Missing(&'static str),
    #[error("summary does not match the records")]
    SummaryMismatch,
}

impl ReportBundle {
    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn summary(&self) -> Summary {
        let passed = self.records.iter().filter(|r| r.pass).count();
        Summary { records: self.records.len(), passed, failed: self.records.len() - passed }
    }

    /// One JSON object per line: config, records, summary.
    pub fn emit_records(&self) -> String {
        let mut out = String::new();
        let mut push = |line: &Line| {
            out.push_str(&serde_json::to_string(line).expect("bundle lines serialize"));
            out.push('\n');
        };
        push(&Line::Config(self.config.clone()));
        for r in &self.records {
            push(&Line::Record(r.clone()));
        }
        push(&Line::Summary(self.summary()));
        out
    }

    pub fn parse_records(text: &str) -> Result<Self, BundleError> {
        let mut config = None;
        let mut records = Vec::new();
        let mut summary = None;
        for (i, raw) in text.lines().enumerate() {
            if raw.trim().is_empty() {
                continue;
            }
            let line: Line = serde_json::from_str(raw)
                .map_err(|e| BundleError::Malformed { line: i + 1, message: e.to_string() })?;
            let misplaced = |what: &str| BundleError::Malformed { line: i + 1, message: format!("unexpected {what} line") };
            match line {
                Line::Config(c) if config.is_none() => config = Some(c),
                Line::Config(_) => return Err(misplaced("config")),
                Line::Record(r) if config.is_some() && summary.is_none() => records.push(r),
                Line::Record(_) => return Err(misplaced("record")),
                Line::Summary(s) if config.is_some() && summary.is_none() => summary = Some(s),
                Line::Summary(_) => return Err(misplaced("summary")),
            }
        }
        let bundle = Self { config: config.ok_or(BundleError::Missing("config"))?, records };
        if summary.ok_or(BundleError::Missing("summary"))? != bundle.summary() {
            return Err(BundleError::SummaryMismatch);
        }
        Ok(bundle)
    }

    /// Human-readable form, derived from the records.
    pub fn emit_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "corpus: {}", if c.corpus.is_empty() { "bundled".into() } else { c.corpus.join(", ") });
        let _ = writeln!(out, "bound {}, seed {}", c.bound, c.seed);
        for r in &self.records {
            let status = if r.pass { "PASS" } else { "FAIL" };
            let _ = write!(out, "{status} {}", r.id);
            if !r.inputs.is_empty() {
                let _ = write!(out, " ({})", r.inputs.join(", "));
            }
            if let Some(ms) = r.timing_ms {
                let _ = write!(out, " [{ms} ms]");
            }
            out.push('\n');
            if let Some(w) = &r.witness {
                let _ = writeln!(out, "  witness: {w}");
            }
            for (role, value) in &r.constructed {
                let _ = writeln!(out, "  {role} = {value}");
            }
            if let Some(u) = r.uniqueness {
                let _ = writeln!(out, "  uniqueness by {u}");
            }
            for n in &r.notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        let s = self.summary();
        let _ = writeln!(out, "{} records, {} passed, {} failed", s.records, s.passed, s.failed);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::MorphismError;
    use crate::theorem::TheoremError;
    use proptest::prelude::*;

    #[test]
    fn error_kinds() {
        let e = MorphismError::BoundExceeded { candidates: 5, bound: 1 };
        assert_eq!(error_kind(&e), "BoundExceeded");
        assert_eq!(error_kind(&TheoremError::Morphism(e)), "BoundExceeded");
        assert_eq!(error_kind(&TheoremError::PreconditionFailed("x".into())), "PreconditionFailed");
    }

    fn text() -> impl Strategy<Value = String> {
        prop_oneof!["[a-z0-9 ]{0,8}", "\\PC{0,6}", Just("\"\\\n{}".to_string())]
    }

    fn record() -> impl Strategy<Value = Record> {
        (
            text(),
            prop::collection::vec(text(), 0..3),
            prop::collection::vec((text(), any::<bool>(), prop::option::of(text())), 0..3),
            prop::collection::vec((text(), text()), 0..2),
            prop::option::of(prop_oneof![Just(Uniqueness::Enumeration), Just(Uniqueness::Coordinates)]),
            prop::collection::vec(text(), 0..2),
            prop::option::of(any::<u64>()),
        )
            .prop_map(|(id, inputs, checks, constructed, uniqueness, notes, timing_ms)| {
                let checks: Vec<Check> = checks.into_iter().map(|(name, pass, witness)| Check { name, pass, witness }).collect();
                let first = checks.iter().find(|c| !c.pass).map(Check::to_string);
                Record { id, inputs, pass: first.is_none(), witness: first, checks, constructed, uniqueness, notes, timing_ms }
            })
    }

    proptest! {
        #[test]
        fn records_round_trip(
            records in prop::collection::vec(record(), 0..5),
            corpus in prop::collection::vec(text(), 0..3),
            bound in 1u64..,
            seed in any::<u64>(),
            tasks in prop::collection::vec(text(), 0..3),
            timing in any::<bool>(),
        ) {
            let bundle = ReportBundle { config: ConfigEcho { corpus, bound, seed, tasks, timing }, records };
            let text = bundle.emit_records();
            prop_assert_eq!(ReportBundle::parse_records(&text).unwrap(), bundle);
        }
    }

    #[test]
    fn parse_rejects_tampering() {
        let bundle = ReportBundle {
            config: ConfigEcho { corpus: vec![], bound: 1, seed: 2, tasks: vec![], timing: false },
            records: vec![Record::error("t", vec![], &MorphismError::BoundExceeded { candidates: 9, bound: 1 })],
        };
        let text = bundle.emit_records();
        assert_eq!(ReportBundle::parse_records(&text.replace("\"failed\":1", "\"failed\":0")), Err(BundleError::SummaryMismatch));
        assert!(matches!(ReportBundle::parse_records("{\"nope\":1}\n"), Err(BundleError::Malformed { line: 1, .. })));
        assert_eq!(ReportBundle::parse_records(""), Err(BundleError::Missing("config")));
    }
}
