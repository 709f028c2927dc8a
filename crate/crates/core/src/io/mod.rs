//! Text formats for every structure, and corpus loading.

mod emit;
mod parse;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;

pub use emit::{emit_category, emit_factorization, emit_group, emit_map, emit_ring, emit_semilinear};

use crate::category::{FactorizationCategory, FiniteCategory};
use crate::group::FiniteGroup;
use crate::morphism::Morphism;
use crate::ring::FiniteRing;
use crate::semilinear::SemilinearMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid structure: {0}")]
    Validation(String),
    #[error("{path}: {message}")]
    File { path: String, message: String },
}

impl IoError {
    fn in_file(self, path: &Path) -> IoError {
        let message = self.to_string();
        IoError::File { path: path.display().to_string(), message }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NamedMap {
    Group { name: String, map: Morphism<FiniteGroup> },
    Ring { name: String, map: Morphism<FiniteRing> },
}

impl NamedMap {
    pub fn name(&self) -> &str {
        match self {
            NamedMap::Group { name, .. } | NamedMap::Ring { name, .. } => name,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedSemilinear {
    pub name: String,
    pub map: SemilinearMap,
}

/// Any parsed structure.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Group(Arc<FiniteGroup>),
    Ring(Arc<FiniteRing>),
    Category(FiniteCategory),
    Factorization(FactorizationCategory),
    Map(NamedMap),
    Semilinear(NamedSemilinear),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Group(_) => "group",
            Value::Ring(_) => "ring",
            Value::Category(_) => "category",
            Value::Factorization(_) => "factorization",
            Value::Map(_) => "map",
            Value::Semilinear(_) => "semilinear",
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Value::Group(g) => g.name(),
            Value::Ring(r) => r.name(),
            Value::Category(c) => c.name(),
            Value::Factorization(f) => f.name(),
            Value::Map(m) => m.name(),
            Value::Semilinear(s) => &s.name,
        }
    }
}

/// Emits any value in its text format.
pub fn emit(value: &Value, library: &Library) -> String {
    match value {
        Value::Group(g) => emit_group(g),
        Value::Ring(r) => emit_ring(r),
        Value::Category(c) => emit_category(c),
        Value::Factorization(f) => emit_factorization(f),
        Value::Map(NamedMap::Group { name, map }) => emit_map(name, map, ""),
        Value::Map(NamedMap::Ring { name, map }) => {
            let clash = library.group(map.source().name()).is_some() && library.group(map.target().name()).is_some();
            emit_map(name, map, if clash { "ring:" } else { "" })
        }
        Value::Semilinear(s) => emit_semilinear(&s.name, &s.map),
    }
}

/// A set of loaded structures. Map files name their endpoints, which are
/// looked up here.
#[derive(Debug, Clone, Default)]
pub struct Library {
    pub groups: Vec<Arc<FiniteGroup>>,
    pub rings: Vec<Arc<FiniteRing>>,
    pub categories: Vec<FiniteCategory>,
    pub factorizations: Vec<FactorizationCategory>,
    pub maps: Vec<NamedMap>,
    pub semilinear: Vec<NamedSemilinear>,
}

impl Library {
    /// Parses one structure; maps resolve their endpoints in `self`.
    pub fn parse(&self, text: &str) -> Result<Value, IoError> {
        parse::parse(text, self)
    }

    pub fn parse_path(&self, path: &Path) -> Result<Value, IoError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| IoError::File { path: path.display().to_string(), message: e.to_string() })?;
        self.parse(&text).map_err(|e| e.in_file(path))
    }

    pub fn insert(&mut self, value: Value) {
        match value {
            Value::Group(g) => self.groups.push(g),
            Value::Ring(r) => self.rings.push(r),
            Value::Category(c) => self.categories.push(c),
            Value::Factorization(f) => self.factorizations.push(f),
            Value::Map(m) => self.maps.push(m),
            Value::Semilinear(s) => self.semilinear.push(s),
        }
    }

    /// Loads `(name, text)` pairs: structures first, then maps.
    pub fn from_texts<'a>(files: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self, IoError> {
        let (library, outcomes) = Self::load_each(files);
        match outcomes.into_iter().find_map(|(_, r)| r.err()) {
            Some(e) => Err(e),
            None => Ok(library),
        }
    }

    /// Like `from_texts`, but keeps every file that parses and reports each
    /// file as `kind name` or its error, in load order.
    pub fn load_each<'a>(
        files: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> (Self, Vec<(String, Result<String, IoError>)>) {
        let files: Vec<(&str, &str)> = files.into_iter().collect();
        let is_map = |text: &str| {
            text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).is_some_and(|l| l.starts_with("map "))
        };
        let mut library = Library::default();
        let mut outcomes = Vec::with_capacity(files.len());
        for pass_maps in [false, true] {
            for (name, text) in files.iter().filter(|(_, t)| is_map(t) == pass_maps) {
                let outcome = match library.parse(text) {
                    Ok(value) => {
                        let label = format!("{} {}", value.kind(), value.name());
                        library.insert(value);
                        Ok(label)
                    }
                    Err(e) => Err(e.in_file(Path::new(name))),
                };
                outcomes.push((name.to_string(), outcome));
            }
        }
        (library, outcomes)
    }

    /// The bundled corpus.
    pub fn bundled() -> Self {
        Self::from_texts(crate::corpus::FILES.iter().copied()).expect("bundled corpus parses")
    }

    /// Every regular file under `dir`, in path order.
    pub fn load_dir(dir: &Path) -> Result<Self, IoError> {
        let texts = read_tree(dir)?;
        Self::from_texts(texts.iter().map(|(p, t)| (p.as_str(), t.as_str())))
    }

    pub fn group(&self, name: &str) -> Option<Arc<FiniteGroup>> {
        self.groups.iter().find(|g| g.name() == name).cloned()
    }

    pub fn ring(&self, name: &str) -> Option<Arc<FiniteRing>> {
        self.rings.iter().find(|r| r.name() == name).cloned()
    }

    pub fn category(&self, name: &str) -> Option<&FiniteCategory> {
        self.categories.iter().find(|c| c.name() == name)
    }

    pub fn map(&self, name: &str) -> Option<&NamedMap> {
        self.maps.iter().find(|m| m.name() == name)
    }

    pub fn semilinear(&self, name: &str) -> Option<&NamedSemilinear> {
        self.semilinear.iter().find(|s| s.name == name)
    }
}

/// `(path, contents)` of every regular file under `dir`, in path order.
pub fn read_tree(dir: &Path) -> Result<Vec<(String, String)>, IoError> {
    let mut paths = Vec::new();
    collect(dir, &mut paths)?;
    paths.sort();
    let mut texts = Vec::with_capacity(paths.len());
    for p in &paths {
        let text = std::fs::read_to_string(p)
            .map_err(|e| IoError::File { path: p.display().to_string(), message: e.to_string() })?;
        texts.push((p.display().to_string(), text));
    }
    Ok(texts)
}

fn collect(dir: &Path, out: &mut Vec<PathBuf>) -> Result<(), IoError> {
    let entries =
        std::fs::read_dir(dir).map_err(|e| IoError::File { path: dir.display().to_string(), message: e.to_string() })?;
    for entry in entries {
        let path = entry.map_err(|e| IoError::File { path: dir.display().to_string(), message: e.to_string() })?.path();
        if path.is_dir() {
            collect(&path, out)?;
        } else {
            out.push(path);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::caf;
    use crate::corpus;

    #[test]
    fn corpus_files_match_constructors() {
        let lib = Library::bundled();
        for (name, text) in corpus::FILES {
            let value = lib.parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(emit(&value, &lib), *text, "{name} is not in canonical form");
        }
        let groups: Vec<_> = corpus::groups().into_iter().map(Value::Group).collect();
        let rings: Vec<_> = corpus::rings().into_iter().map(Value::Ring).collect();
        let cats: Vec<_> = corpus::categories().into_iter().map(Value::Category).collect();
        for v in groups.iter().chain(&rings).chain(&cats) {
            let text = emit(v, &lib);
            assert!(corpus::FILES.iter().any(|(_, t)| *t == text), "no corpus file for {}", v.name());
        }
        assert_eq!(lib.map("signstar").unwrap(), &NamedMap::Group { name: "signstar".into(), map: corpus::signstar() });
        assert_eq!(lib.semilinear("rank2").unwrap().map, corpus::rank2());
    }

    #[test]
    fn factorization_round_trip() {
        let lib = Library::bundled();
        for c in corpus::categories() {
            let fc = caf(&c);
            let text = emit_factorization(&fc);
            assert_eq!(lib.parse(&text).unwrap(), Value::Factorization(fc), "{text}");
        }
    }

    #[test]
    fn parse_errors_carry_lines() {
        let lib = Library::bundled();
        let truncated = "group Z3 order 3\n0 1 2\n1 2 0\n";
        assert_eq!(lib.parse(truncated), Err(IoError::Parse { line: 4, message: "expected a table row, found end of file".into() }));
        let ragged = "group Z3 order 3\n0 1 2\n1 2\n2 0 1\n";
        assert!(matches!(lib.parse(ragged), Err(IoError::Parse { line: 3, .. })));
        let no_mul = "ring Z2 order 2\nadd:\n0 1\n1 0\n";
        assert!(matches!(lib.parse(no_mul), Err(IoError::Parse { line: 5, .. })));
        let not_group = "group X order 2\n0 0\n0 0\n";
        assert!(matches!(lib.parse(not_group), Err(IoError::Validation(_))));
        let bad_map = "map m from S3 to Z2 variance anti\n0 1 0 1 0 1\n";
        assert!(matches!(lib.parse(bad_map), Err(IoError::Validation(_))));
        let straight_reverse = emit_factorization(&caf(&corpus::arrow_category())).replace("compose ab 1_a* = ab*", "compose ab 1_a* = ab");
        assert!(matches!(lib.parse(&straight_reverse), Err(IoError::Validation(m)) if m.contains("axiom 2")));
    }
}
