use std::path::Path;
use std::sync::Arc;

use super::{Corpus, RunError};
use crate::group::{FiniteGroup, Subgroup};
use crate::io::{NamedMap, NamedSemilinear, Value};
use crate::ring::{FiniteRing, RingIdeal, Side};

/// Looks `spec` up as a structure name, then as a file path, then as the
/// name of a corpus file (`s3.grp` finds `groups/s3.grp`).
fn value(corpus: &Corpus, spec: &str) -> Result<Option<Value>, RunError> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(Some(corpus.library.parse_path(path)?));
    }
    let by_name = corpus.texts.iter().find(|(name, _)| {
        let file = Path::new(name).file_name().and_then(|f| f.to_str());
        name == spec || file == Some(spec)
    });
    match by_name {
        Some((_, text)) => Ok(Some(corpus.library.parse(text)?)),
        None => Ok(None),
    }
}

pub(super) fn group(corpus: &Corpus, spec: &str) -> Result<Arc<FiniteGroup>, RunError> {
    if let Some(g) = corpus.library.group(spec) {
        return Ok(g);
    }
    match value(corpus, spec)? {
        Some(Value::Group(g)) => Ok(g),
        Some(v) => Err(RunError::Invalid(format!("{spec} is a {}, not a group", v.kind()))),
        None => Err(RunError::Unknown { kind: "group", name: spec.into() }),
    }
}

pub(super) fn ring(corpus: &Corpus, spec: &str) -> Result<Arc<FiniteRing>, RunError> {
    if let Some(r) = corpus.library.ring(spec) {
        return Ok(r);
    }
    match value(corpus, spec)? {
        Some(Value::Ring(r)) => Ok(r),
        Some(v) => Err(RunError::Invalid(format!("{spec} is a {}, not a ring", v.kind()))),
        None => Err(RunError::Unknown { kind: "ring", name: spec.into() }),
    }
}

pub(super) fn map(corpus: &Corpus, spec: &str) -> Result<NamedMap, RunError> {
    if let Some(m) = corpus.library.map(spec) {
        return Ok(m.clone());
    }
    match value(corpus, spec)? {
        Some(Value::Map(m)) => Ok(m),
        Some(v) => Err(RunError::Invalid(format!("{spec} is a {}, not a map", v.kind()))),
        None => Err(RunError::Unknown { kind: "map", name: spec.into() }),
    }
}

pub(super) fn semilinear(corpus: &Corpus, spec: &str) -> Result<NamedSemilinear, RunError> {
    if let Some(m) = corpus.library.semilinear(spec) {
        return Ok(m.clone());
    }
    match value(corpus, spec)? {
        Some(Value::Semilinear(m)) => Ok(m),
        Some(v) => Err(RunError::Invalid(format!("{spec} is a {}, not a semilinear map", v.kind()))),
        None => Err(RunError::Unknown { kind: "semilinear map", name: spec.into() }),
    }
}

fn indices(list: &str) -> Result<Vec<usize>, RunError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| RunError::Invalid(format!("{s} is not an element index"))))
        .collect()
}

/// A subgroup written as `0,1,2` (members), `<1,3>` (generators),
/// `trivial`, `whole`, or the name of a group isomorphic to exactly one
/// normal subgroup of `g` (`Z3` in `S3`).
pub fn parse_subgroup(g: &Arc<FiniteGroup>, spec: &str, names: &[Arc<FiniteGroup>]) -> Result<Subgroup, RunError> {
    let spec = spec.trim();
    let invalid = |e: crate::group::GroupError| RunError::Invalid(format!("{spec} in {}: {e}", g.name()));
    if spec == "trivial" {
        return Ok(g.trivial_subgroup());
    }
    if spec == "whole" {
        return Ok(g.whole());
    }
    if let Some(gens) = spec.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
        let gens = indices(gens)?;
        if let Some(&x) = gens.iter().find(|&&x| x >= g.order()) {
            return Err(RunError::Invalid(format!("{x} is not an element of {}", g.name())));
        }
        return g.subgroup_closure(&gens).map_err(invalid);
    }
    if spec.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        return g.subgroup(&indices(spec)?).map_err(invalid);
    }
    let shape = names.iter().find(|h| h.name() == spec).ok_or_else(|| RunError::Unknown { kind: "subgroup", name: spec.into() })?;
    let mut found = Vec::new();
    for n in g.normal_subgroups() {
        if n.len() != shape.order() {
            continue;
        }
        let (sub, _) = g.restrict(&n);
        if sub.is_isomorphic(shape).map_err(invalid)? {
            found.push(n);
        }
    }
    match found.len() {
        1 => Ok(found.remove(0)),
        0 => Err(RunError::Invalid(format!("{} has no normal subgroup isomorphic to {spec}", g.name()))),
        k => Err(RunError::Invalid(format!("{} has {k} normal subgroups isomorphic to {spec}; list the members", g.name()))),
    }
}

/// A two-sided ideal written as its members, `0,2`.
pub fn parse_ideal(r: &FiniteRing, spec: &str) -> Result<RingIdeal, RunError> {
    let members = indices(spec)?;
    r.ideal(&members, Side::TwoSided).map_err(|e| RunError::Invalid(format!("{spec} in {}: {e}", r.name())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn subgroup_specs() {
        let s3 = corpus::s3();
        let names = corpus::groups();
        let a3 = s3.subgroup_closure(&[1]).unwrap();
        assert_eq!(parse_subgroup(&s3, "Z3", &names).unwrap(), a3);
        assert_eq!(parse_subgroup(&s3, "<1>", &names).unwrap(), a3);
        assert_eq!(parse_subgroup(&s3, "0,1,2", &names).unwrap(), a3);
        assert_eq!(parse_subgroup(&s3, "trivial", &names).unwrap(), s3.trivial_subgroup());
        assert!(parse_subgroup(&s3, "<9>", &names).is_err());
        assert!(parse_subgroup(&s3, "0,1", &names).is_err());
        assert!(matches!(parse_subgroup(&s3, "Z2", &names), Err(RunError::Invalid(_))));
        assert!(matches!(parse_subgroup(&s3, "A3", &names), Err(RunError::Unknown { .. })));
        let z2xz2 = corpus::z2xz2();
        assert!(parse_subgroup(&z2xz2, "Z2", &names).unwrap_err().to_string().contains("3 normal subgroups"));
    }
}
