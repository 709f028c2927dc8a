//! Batch runs over a corpus: task selection, execution and report bundles.

mod bundle;
mod resolve;
mod tasks;

use std::path::PathBuf;
use std::time::Instant;

use thiserror::Error;

pub use bundle::{error_kind, BundleError, ConfigEcho, Record, ReportBundle, Summary};
pub use resolve::{parse_ideal, parse_subgroup};

use crate::io::{read_tree, IoError, Library};
use crate::morphism::DEFAULT_BOUND;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatOp {
    Caf,
    Fca,
    Anti,
    Assoc,
    Equiv,
    Products,
    Adjunction,
}

impl CatOp {
    pub const ALL: [CatOp; 7] =
        [CatOp::Caf, CatOp::Fca, CatOp::Anti, CatOp::Assoc, CatOp::Equiv, CatOp::Products, CatOp::Adjunction];

    pub fn as_str(self) -> &'static str {
        match self {
            CatOp::Caf => "caf",
            CatOp::Fca => "fca",
            CatOp::Anti => "anti",
            CatOp::Assoc => "assoc",
            CatOp::Equiv => "equiv",
            CatOp::Products => "products",
            CatOp::Adjunction => "adjunction",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditOp {
    PointwiseRing,
    NaturalAnMap,
}

impl AuditOp {
    pub const ALL: [AuditOp; 2] = [AuditOp::PointwiseRing, AuditOp::NaturalAnMap];

    pub fn as_str(self) -> &'static str {
        match self {
            AuditOp::PointwiseRing => "pointwise-ring",
            AuditOp::NaturalAnMap => "natural-an-map",
        }
    }
}

/// Explicit inputs for `verify`. Unset fields fall back to the built-in
/// instances of each theorem.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Instance {
    pub group: Option<String>,
    pub ring: Option<String>,
    /// A normal subgroup (`N`, or `B` in the second theorem).
    pub normal: Option<String>,
    /// A subgroup (`A` in the third theorem).
    pub subgroup: Option<String>,
    /// The inner normal subgroup `C` of the second theorem.
    pub inner: Option<String>,
    pub ideal: Option<String>,
    pub map: Option<String>,
}

impl Instance {
    fn is_empty(&self) -> bool {
        *self == Instance::default()
    }

    fn describe(&self) -> String {
        let fields = [
            ("group", &self.group),
            ("ring", &self.ring),
            ("normal", &self.normal),
            ("subgroup", &self.subgroup),
            ("inner", &self.inner),
            ("ideal", &self.ideal),
            ("map", &self.map),
        ];
        fields.iter().filter_map(|(k, v)| v.as_ref().map(|v| format!(" --{k} {v}"))).collect()
    }
}

/// Theorem ids accepted by `verify`.
pub const VERIFY_IDS: &[&str] = &[
    "variance-table",
    "correspondence",
    "law-of-factorization",
    "anti-monoid",
    "automorphism-algebra",
    "anti-factorization",
    "anti-hom-theorem",
    "second-anti-iso",
    "third-anti-iso",
    "abelian-collapse",
    "ring-anti-factorization",
    "ring-anti-hom-theorem",
    "subring-transport",
    "semilinear",
    "anti-mono-epi",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Task {
    Validate,
    EnumHoms,
    EnumAntihoms,
    Verify { ids: Vec<String>, instance: Instance },
    Cat(CatOp),
    Audit(AuditOp),
    /// Everything above with built-in instances.
    Report,
}

impl Task {
    pub fn describe(&self) -> String {
        match self {
            Task::Validate => "validate".into(),
            Task::EnumHoms => "enum-homs".into(),
            Task::EnumAntihoms => "enum-antihoms".into(),
            Task::Verify { ids, instance } => {
                let mut s = String::from("verify");
                for id in ids {
                    s.push(' ');
                    s.push_str(id);
                }
                s + &instance.describe()
            }
            Task::Cat(op) => format!("cat {}", op.as_str()),
            Task::Audit(op) => format!("audit {}", op.as_str()),
            Task::Report => "report".into(),
        }
    }

    /// `report` expanded into its parts.
    fn expand(&self) -> Vec<Task> {
        match self {
            Task::Report => {
                let mut v = vec![Task::Validate, Task::EnumHoms, Task::EnumAntihoms];
                v.push(Task::Verify { ids: VERIFY_IDS.iter().map(|s| s.to_string()).collect(), instance: Instance::default() });
                v.extend(CatOp::ALL.map(Task::Cat));
                v.extend(AuditOp::ALL.map(Task::Audit));
                v
            }
            t => vec![t.clone()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    /// Files or directories; empty means the bundled corpus.
    pub corpus: Vec<PathBuf>,
    pub bound: u64,
    pub seed: u64,
    pub format: Format,
    pub tasks: Vec<Task>,
    /// Adds wall-clock times to records, which makes output nondeterministic.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { corpus: Vec::new(), bound: DEFAULT_BOUND, seed: DEFAULT_SEED, format: Format::Records, tasks: Vec::new(), timing: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("bound must be positive")]
    ZeroBound,
    #[error("no {kind} named {name}")]
    Unknown { kind: &'static str, name: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Morphism(#[from] crate::morphism::MorphismError),
    #[error(transparent)]
    Theorem(#[from] crate::theorem::TheoremError),
}

/// A loaded corpus and the outcome of every file in it.
pub struct Corpus {
    pub library: Library,
    pub files: Vec<(String, Result<String, IoError>)>,
    /// Raw `(name, text)` pairs, for resolving inputs by file name.
    pub texts: Vec<(String, String)>,
}

impl Corpus {
    pub fn load(paths: &[PathBuf]) -> Self {
        let mut texts: Vec<(String, String)> = Vec::new();
        let mut unreadable = Vec::new();
        if paths.is_empty() {
            texts.extend(crate::corpus::FILES.iter().map(|(n, t)| (n.to_string(), t.to_string())));
        }
        for p in paths {
            let read = if p.is_dir() {
                read_tree(p)
            } else {
                std::fs::read_to_string(p)
                    .map(|t| vec![(p.display().to_string(), t)])
                    .map_err(|e| IoError::File { path: p.display().to_string(), message: e.to_string() })
            };
            match read {
                Ok(v) => texts.extend(v),
                Err(e) => unreadable.push((p.display().to_string(), Err(e))),
            }
        }
        let (library, mut files) = Library::load_each(texts.iter().map(|(n, t)| (n.as_str(), t.as_str())));
        files.extend(unreadable);
        Self { library, files, texts }
    }
}

fn timed(timing: bool, f: impl FnOnce() -> Vec<Record>) -> Vec<Record> {
    let start = Instant::now();
    let mut records = f();
    if timing {
        let ms = start.elapsed().as_millis() as u64;
        for r in &mut records {
            r.timing_ms = Some(ms);
        }
    }
    records
}

/// Runs every selected task in order. Never panics on malformed input:
/// load, parse and bound errors become FAIL records.
pub fn run(config: &RunConfig) -> ReportBundle {
    let echo = ConfigEcho {
        corpus: config.corpus.iter().map(|p| p.display().to_string()).collect(),
        bound: config.bound,
        seed: config.seed,
        tasks: config.tasks.iter().map(Task::describe).collect(),
        timing: config.timing,
    };
    let mut records = Vec::new();
    if config.tasks.is_empty() {
        return ReportBundle { config: echo, records };
    }
    if config.bound == 0 {
        records.push(Record::error("config", Vec::new(), &RunError::ZeroBound));
        return ReportBundle { config: echo, records };
    }
    let corpus = Corpus::load(&config.corpus);
    let tasks: Vec<Task> = config.tasks.iter().flat_map(Task::expand).collect();
    if !tasks.contains(&Task::Validate) {
        for (name, outcome) in &corpus.files {
            if let Err(e) = outcome {
                records.push(Record::error("load", vec![name.clone()], e));
            }
        }
    }
    for task in &tasks {
        records.extend(timed(config.timing, || tasks::execute(task, &corpus, config)));
    }
    ReportBundle { config: echo, records }
}

/// The bundle in the configured format.
pub fn render(bundle: &ReportBundle, format: Format) -> String {
    match format {
        Format::Records => bundle.emit_records(),
        Format::Text => bundle.emit_text(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(tasks: Vec<Task>) -> RunConfig {
        RunConfig { tasks, ..RunConfig::default() }
    }

    #[test]
    fn empty_selection_passes() {
        let b = run(&config(Vec::new()));
        assert!(b.records.is_empty() && b.pass());
    }

    #[test]
    fn spec_instance_of_anti_factorization() {
        let instance = Instance {
            group: Some("s3.grp".into()),
            normal: Some("Z3".into()),
            map: Some("signstar.map".into()),
            ..Instance::default()
        };
        let b = run(&config(vec![Task::Verify { ids: vec!["anti-factorization".into()], instance }]));
        assert_eq!(b.records.len(), 1);
        assert!(b.pass(), "{}", b.emit_text());
    }

    #[test]
    fn bound_exceeded_is_a_fail_record() {
        let b = run(&RunConfig { bound: 3, ..config(vec![Task::EnumHoms]) });
        assert!(!b.pass());
        let r = b.records.iter().find(|r| !r.pass).unwrap();
        assert!(r.witness.as_deref().unwrap().starts_with("BoundExceeded"), "{r:?}");
    }

    #[test]
    fn bad_inputs_do_not_panic() {
        let instance = Instance { group: Some("nope".into()), ..Instance::default() };
        let b = run(&config(vec![
            Task::Verify { ids: vec!["anti-factorization".into(), "no-such-theorem".into()], instance },
        ]));
        assert_eq!(b.records.len(), 2);
        assert!(b.records.iter().all(|r| !r.pass && r.witness.is_some()));
        let b = run(&RunConfig { corpus: vec!["/nonexistent/corpus".into()], ..config(vec![Task::Validate]) });
        assert!(!b.pass());
    }
}
