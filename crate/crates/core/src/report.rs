//! Verification reports shared by every checker.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One named check and, on failure, a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => f.write_str(&self.name),
            Some(w) => write!(f, "{}: {w}", self.name),
        }
    }
}

/// How a uniqueness claim was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Uniqueness {
    Enumeration,
    Surjectivity,
    Coordinates,
}

impl fmt::Display for Uniqueness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Uniqueness::Enumeration => "enumeration",
            Uniqueness::Surjectivity => "surjectivity",
            Uniqueness::Coordinates => "coordinates",
        })
    }
}

/// Result of one verification: PASS iff every check passes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub id: String,
    pub inputs: Vec<String>,
    /// Constructed maps, by role.
    pub witnesses: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub uniqueness: Option<Uniqueness>,
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn new<I, T>(id: impl Into<String>, inputs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        Self {
            id: id.into(),
            inputs: inputs.into_iter().map(Into::into).collect(),
            witnesses: Vec::new(),
            checks: Vec::new(),
            uniqueness: None,
            notes: Vec::new(),
        }
    }

    /// Records a check; `failure` is the witness when it fails.
    pub fn check(&mut self, name: impl Into<String>, failure: Option<String>) -> bool {
        let pass = failure.is_none();
        self.checks.push(Check { name: name.into(), pass, witness: failure });
        pass
    }

    /// Records `cond`, building the witness only on failure.
    pub fn require(&mut self, name: impl Into<String>, cond: bool, witness: impl FnOnce() -> String) -> bool {
        self.check(name, (!cond).then(witness))
    }

    pub fn witness(&mut self, role: impl Into<String>, value: impl Into<String>) {
        self.witnesses.push((role.into(), value.into()));
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Copies another report's checks under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: TheoremReport) {
        for c in other.checks {
            self.checks.push(Check { name: format!("{prefix}: {}", c.name), ..c });
        }
        for (role, value) in other.witnesses {
            self.witnesses.push((format!("{prefix}: {role}"), value));
        }
        for n in other.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        writeln!(f, "{status} {} ({})", self.id, self.inputs.join(", "))?;
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "  ok   {}", c.name)?,
                Some(w) => writeln!(f, "  FAIL {}: {w}", c.name)?,
            }
        }
        for (role, value) in &self.witnesses {
            writeln!(f, "  {role} = {value}")?;
        }
        if let Some(u) = self.uniqueness {
            writeln!(f, "  uniqueness by {u}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

/// Renders a table of indices as a space-separated list.
pub fn render(values: &[usize]) -> String {
    let parts: Vec<String> = values.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_all_checks_pass() {
        let mut r = TheoremReport::new("t", ["a"]);
        assert!(r.pass());
        r.require("first", true, || unreachable!());
        assert!(r.pass());
        r.require("second", false, || "x = 3".into());
        assert!(!r.pass());
        assert_eq!(r.first_failure().unwrap().witness.as_deref(), Some("x = 3"));
        assert!(r.to_string().starts_with("FAIL t (a)"));
    }
}
