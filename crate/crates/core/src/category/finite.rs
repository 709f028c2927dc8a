use std::fmt;

use super::CategoryError;

/// Marks a non-composable pair or an undefined sum.
pub const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn new(name: impl Into<String>, source: usize, target: usize) -> Self {
        Self { name: name.into(), source, target }
    }
}

/// Abelian group tables on every hom-set: `add[f·m + g]` is defined iff
/// `f` and `g` are parallel, and `zero[a·n + b]` is the zero of `Hom(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Additive {
    pub add: Vec<usize>,
    pub zero: Vec<usize>,
}

/// A category given by its full composition table.
///
/// `compose[g·m + f]` is `g ∘ f` when `source(g) = target(f)` and
/// [`NONE`] otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    name: String,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    compose: Vec<usize>,
    additive: Option<Additive>,
}

impl FiniteCategory {
    pub fn new(
        name: impl Into<String>,
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        compose: Vec<usize>,
        additive: Option<Additive>,
    ) -> Result<Self, CategoryError> {
        let c = Self { name: name.into(), objects, arrows, identities, compose, additive };
        c.validate()?;
        Ok(c)
    }

    /// Builds the table from `g ∘ f` on composable pairs.
    pub fn from_fn(
        name: impl Into<String>,
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, CategoryError> {
        let m = arrows.len();
        let mut table = vec![NONE; m * m];
        for g in 0..m {
            for f in 0..m {
                if arrows[g].source == arrows[f].target {
                    table[g * m + f] = compose(g, f);
                }
            }
        }
        Self::new(name, objects, arrows, identities, table, None)
    }

    pub fn with_additive(self, additive: Additive) -> Result<Self, CategoryError> {
        Self::new(self.name, self.objects, self.arrows, self.identities, self.compose, Some(additive))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn validate(&self) -> Result<(), CategoryError> {
        let (n, m) = (self.objects.len(), self.arrows.len());
        if self.identities.len() != n {
            return Err(CategoryError::Malformed(format!("{} identities for {n} objects", self.identities.len())));
        }
        if self.compose.len() != m * m {
            return Err(CategoryError::Malformed("composition table has the wrong size".into()));
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source >= n || a.target >= n {
                return Err(CategoryError::Malformed(format!("arrow {} has an unknown endpoint", a.name)));
            }
            if self.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(CategoryError::Malformed(format!("arrow name {} repeats", a.name)));
            }
        }
        for (x, &id) in self.identities.iter().enumerate() {
            if id >= m || self.arrows[id].source != x || self.arrows[id].target != x {
                return Err(CategoryError::BadIdentity { object: self.objects[x].clone(), arrow: self.label(id) });
            }
        }
        for g in 0..m {
            for f in 0..m {
                let h = self.compose[g * m + f];
                let composable = self.arrows[g].source == self.arrows[f].target;
                if !composable {
                    if h != NONE {
                        return Err(CategoryError::Malformed(format!(
                            "{} ∘ {} is defined but not composable",
                            self.arrows[g].name, self.arrows[f].name
                        )));
                    }
                    continue;
                }
                if h >= m || self.arrows[h].source != self.arrows[f].source || self.arrows[h].target != self.arrows[g].target {
                    return Err(CategoryError::Malformed(format!(
                        "{} ∘ {} has the wrong endpoints",
                        self.arrows[g].name, self.arrows[f].name
                    )));
                }
            }
        }
        for f in 0..m {
            let a = &self.arrows[f];
            if self.compose(self.identities[a.target], f) != f || self.compose(f, self.identities[a.source]) != f {
                return Err(CategoryError::BadIdentity { object: self.objects[a.source].clone(), arrow: a.name.clone() });
            }
        }
        if let Some((h, g, f)) = self.associativity_witness() {
            return Err(CategoryError::NotAssociative { h: self.label(h), g: self.label(g), f: self.label(f) });
        }
        if let Some(add) = &self.additive {
            self.validate_additive(add)?;
        }
        Ok(())
    }

    fn label(&self, f: usize) -> String {
        self.arrows.get(f).map(|a| a.name.clone()).unwrap_or_else(|| format!("#{f}"))
    }

    /// Some `(h, g, f)` with `(h ∘ g) ∘ f ≠ h ∘ (g ∘ f)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let m = self.arrows.len();
        for f in 0..m {
            for g in self.arrows_from(self.arrows[f].target) {
                let gf = self.compose(g, f);
                for h in self.arrows_from(self.arrows[g].target) {
                    if self.compose(self.compose(h, g), f) != self.compose(h, gf) {
                        return Some((h, g, f));
                    }
                }
            }
        }
        None
    }

    fn validate_additive(&self, add: &Additive) -> Result<(), CategoryError> {
        let (n, m) = (self.objects.len(), self.arrows.len());
        if add.add.len() != m * m || add.zero.len() != n * n {
            return Err(CategoryError::NotAdditive("tables have the wrong size".into()));
        }
        let fail = |s: String| Err(CategoryError::NotAdditive(s));
        for a in 0..n {
            for b in 0..n {
                let hom = self.hom(a, b);
                let z = add.zero[a * n + b];
                if !hom.contains(&z) {
                    return fail(format!("zero of Hom({}, {}) is not in it", self.objects[a], self.objects[b]));
                }
                for &f in &hom {
                    if add.add[f * m + z] != f {
                        return fail(format!("{} + 0 ≠ {}", self.label(f), self.label(f)));
                    }
                    if !hom.iter().any(|&g| add.add[f * m + g] == z) {
                        return fail(format!("{} has no negative", self.label(f)));
                    }
                    for &g in &hom {
                        let s = add.add[f * m + g];
                        if !hom.contains(&s) || s != add.add[g * m + f] {
                            return fail(format!("{} + {} is not a commutative sum", self.label(f), self.label(g)));
                        }
                        for &h in &hom {
                            if add.add[s * m + h] != add.add[f * m + add.add[g * m + h]] {
                                return fail(format!("+ is not associative at {}", self.label(f)));
                            }
                        }
                    }
                }
            }
        }
        for f in 0..m {
            for g in 0..m {
                let parallel = self.arrows[f].source == self.arrows[g].source && self.arrows[f].target == self.arrows[g].target;
                if !parallel {
                    if add.add[f * m + g] != NONE {
                        return fail(format!("{} + {} is defined on non-parallel arrows", self.label(f), self.label(g)));
                    }
                    continue;
                }
                let s = add.add[f * m + g];
                for h in self.arrows_from(self.arrows[f].target) {
                    if self.compose(h, s) != add.add[self.compose(h, f) * m + self.compose(h, g)] {
                        return fail(format!("composition with {} is not additive", self.label(h)));
                    }
                }
                for k in self.arrows_into(self.arrows[f].source) {
                    if self.compose(s, k) != add.add[self.compose(f, k) * m + self.compose(g, k)] {
                        return fail(format!("composition with {} is not additive", self.label(k)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, f: usize) -> &Arrow {
        &self.arrows[f]
    }

    pub fn source(&self, f: usize) -> usize {
        self.arrows[f].source
    }

    pub fn target(&self, f: usize) -> usize {
        self.arrows[f].target
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.arrows[f].source] == f
    }

    /// `g ∘ f`; panics unless composable.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        let h = self.compose[g * self.arrows.len() + f];
        assert!(h != NONE, "{} ∘ {} is not composable", self.label(g), self.label(f));
        h
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        let h = self.compose[g * self.arrows.len() + f];
        (h != NONE).then_some(h)
    }

    pub fn table(&self) -> &[usize] {
        &self.compose
    }

    pub fn additive(&self) -> Option<&Additive> {
        self.additive.as_ref()
    }

    pub fn add(&self, f: usize, g: usize) -> Option<usize> {
        let add = self.additive.as_ref()?;
        let s = add.add[f * self.arrows.len() + g];
        (s != NONE).then_some(s)
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f].source == a && self.arrows[f].target == b).collect()
    }

    pub fn arrows_from(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&f| self.arrows[f].source == a)
    }

    pub fn arrows_into(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&f| self.arrows[f].target == b)
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// A two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let a = &self.arrows[f];
        self.hom(a.target, a.source).into_iter().find(|&g| {
            self.compose(g, f) == self.identities[a.source] && self.compose(f, g) == self.identities[a.target]
        })
    }

    pub fn isomorphism(&self, a: usize, b: usize) -> Option<usize> {
        self.hom(a, b).into_iter().find(|&f| self.inverse(f).is_some())
    }

    /// The full subcategory on the arrows kept by `keep`, renumbered in
    /// order; `None` if `keep` is not closed under composition or misses
    /// an identity.
    pub fn restrict(&self, name: impl Into<String>, keep: impl Fn(usize) -> bool) -> Option<(Self, Vec<usize>)> {
        let kept: Vec<usize> = (0..self.arrows.len()).filter(|&f| keep(f)).collect();
        let mut index = vec![NONE; self.arrows.len()];
        for (i, &f) in kept.iter().enumerate() {
            index[f] = i;
        }
        let identities: Option<Vec<usize>> = self.identities.iter().map(|&id| (index[id] != NONE).then(|| index[id])).collect();
        let k = kept.len();
        let mut table = vec![NONE; k * k];
        for (i, &g) in kept.iter().enumerate() {
            for (j, &f) in kept.iter().enumerate() {
                if let Some(h) = self.try_compose(g, f) {
                    if index[h] == NONE {
                        return None;
                    }
                    table[i * k + j] = index[h];
                }
            }
        }
        let arrows = kept.iter().map(|&f| self.arrows[f].clone()).collect();
        let c = Self::new(name, self.objects.clone(), arrows, identities?, table, None).ok()?;
        Some((c, kept))
    }
}

impl fmt::Display for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} objects, {} arrows)", self.name, self.objects.len(), self.arrows.len())
    }
}
