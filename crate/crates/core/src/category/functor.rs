use super::finite::{FiniteCategory, NONE};
use super::CategoryError;
use crate::report::TheoremReport;

/// Largest category accepted by functor enumeration.
pub const MAX_OBJECTS: usize = 3;
pub const MAX_ARROWS: usize = 8;

/// Object and arrow maps between two finite categories.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &FiniteCategory) -> Self {
        Self { objects: (0..c.object_count()).collect(), arrows: (0..c.arrow_count()).collect() }
    }

    /// The first violated functor law, if any.
    pub fn law_violation(&self, c: &FiniteCategory, d: &FiniteCategory) -> Option<String> {
        if self.objects.len() != c.object_count() || self.arrows.len() != c.arrow_count() {
            return Some("maps have the wrong length".into());
        }
        if self.objects.iter().any(|&x| x >= d.object_count()) || self.arrows.iter().any(|&f| f >= d.arrow_count()) {
            return Some("image out of range".into());
        }
        for (f, a) in c.arrows().iter().enumerate() {
            let image = d.arrow(self.arrows[f]);
            if image.source != self.objects[a.source] || image.target != self.objects[a.target] {
                return Some(format!("F({}) = {} has the wrong endpoints", a.name, image.name));
            }
        }
        for x in 0..c.object_count() {
            if self.arrows[c.identity(x)] != d.identity(self.objects[x]) {
                return Some(format!("F(1_{}) is not an identity", c.objects()[x]));
            }
        }
        for g in 0..c.arrow_count() {
            for f in c.arrows_into(c.source(g)) {
                if self.arrows[c.compose(g, f)] != d.compose(self.arrows[g], self.arrows[f]) {
                    return Some(format!("F({} ∘ {}) ≠ F({}) ∘ F({})", c.arrow(g).name, c.arrow(f).name, c.arrow(g).name, c.arrow(f).name));
                }
            }
        }
        None
    }

    pub fn is_functor(&self, c: &FiniteCategory, d: &FiniteCategory) -> bool {
        self.law_violation(c, d).is_none()
    }

    /// Whether `F(f + g) = F(f) + F(g)` on every hom-set.
    pub fn is_additive(&self, c: &FiniteCategory, d: &FiniteCategory) -> bool {
        (0..c.arrow_count()).all(|f| {
            (0..c.arrow_count()).all(|g| match c.add(f, g) {
                Some(s) => d.add(self.arrows[f], self.arrows[g]) == Some(self.arrows[s]),
                None => true,
            })
        })
    }

    /// `self ∘ inner`.
    pub fn then_after(&self, inner: &Functor) -> Functor {
        Functor {
            objects: inner.objects.iter().map(|&x| self.objects[x]).collect(),
            arrows: inner.arrows.iter().map(|&f| self.arrows[f]).collect(),
        }
    }

    pub fn describe(&self, c: &FiniteCategory, d: &FiniteCategory) -> String {
        let objects: Vec<String> =
            (0..c.object_count()).map(|x| format!("{}↦{}", c.objects()[x], d.objects()[self.objects[x]])).collect();
        let arrows: Vec<String> = (0..c.arrow_count())
            .filter(|&f| !c.is_identity(f))
            .map(|f| format!("{}↦{}", c.arrow(f).name, d.arrow(self.arrows[f]).name))
            .collect();
        format!("{{{}; {}}}", objects.join(" "), arrows.join(" "))
    }
}

fn check_size(c: &FiniteCategory) -> Result<(), CategoryError> {
    if c.object_count() > MAX_OBJECTS || c.arrow_count() > MAX_ARROWS {
        return Err(CategoryError::TooLarge {
            name: c.name().to_string(),
            objects: c.object_count(),
            arrows: c.arrow_count(),
        });
    }
    Ok(())
}

/// Every functor `C → D`, in lexicographic order of `(objects, arrows)`.
/// Refuses categories beyond 3 objects or 8 arrows.
pub fn enumerate_functors(c: &FiniteCategory, d: &FiniteCategory) -> Result<Vec<Functor>, CategoryError> {
    check_size(c)?;
    check_size(d)?;
    Ok(enumerate_unchecked(c, d, |_, _| true))
}

/// Backtracking over arrow images; `allowed(f, image)` filters candidates.
pub(crate) fn enumerate_unchecked(
    c: &FiniteCategory,
    d: &FiniteCategory,
    allowed: impl Fn(usize, usize) -> bool,
) -> Vec<Functor> {
    let (n, m) = (c.object_count(), c.arrow_count());
    let mut out = Vec::new();
    let mut objects = vec![0; n];
    loop {
        let candidates: Vec<Vec<usize>> = (0..m)
            .map(|f| {
                let a = c.arrow(f);
                if c.is_identity(f) {
                    vec![d.identity(objects[a.source])]
                } else {
                    d.hom(objects[a.source], objects[a.target]).into_iter().filter(|&g| allowed(f, g)).collect()
                }
            })
            .collect();
        let mut arrows = vec![NONE; m];
        extend(c, d, &candidates, &mut arrows, 0, &objects, &mut out);
        if !crate::group::advance(&mut objects, d.object_count()) {
            break;
        }
        if n == 0 {
            break;
        }
    }
    out.sort();
    out
}

fn extend(
    c: &FiniteCategory,
    d: &FiniteCategory,
    candidates: &[Vec<usize>],
    arrows: &mut Vec<usize>,
    i: usize,
    objects: &[usize],
    out: &mut Vec<Functor>,
) {
    if i == arrows.len() {
        out.push(Functor { objects: objects.to_vec(), arrows: arrows.clone() });
        return;
    }
    for &g in &candidates[i] {
        arrows[i] = g;
        let consistent = (0..=i).all(|a| {
            (0..=i).all(|b| match c.try_compose(a, b) {
                Some(h) if h <= i => d.compose(arrows[a], arrows[b]) == arrows[h],
                _ => true,
            })
        });
        if consistent {
            extend(c, d, candidates, arrows, i + 1, objects, out);
        }
    }
    arrows[i] = NONE;
}

/// Fully faithful and essentially surjective, checked exhaustively.
pub fn check_equivalence(f: &Functor, c: &FiniteCategory, d: &FiniteCategory) -> TheoremReport {
    let mut report = TheoremReport::new("equivalence", [c.name().to_string(), d.name().to_string(), f.describe(c, d)]);
    report.check("F is a functor", f.law_violation(c, d));
    if !report.pass() {
        return report;
    }
    let mut faithful = None;
    let mut full = None;
    for x in 0..c.object_count() {
        for y in 0..c.object_count() {
            let mut images: Vec<usize> = c.hom(x, y).iter().map(|&g| f.arrows[g]).collect();
            let count = images.len();
            images.sort_unstable();
            images.dedup();
            if images.len() != count && faithful.is_none() {
                faithful = Some(format!("Hom({}, {}) is not mapped injectively", c.objects()[x], c.objects()[y]));
            }
            let target = d.hom(f.objects[x], f.objects[y]).len();
            if images.len() != target && full.is_none() {
                full = Some(format!(
                    "Hom({}, {}) reaches {} of {target} arrows",
                    c.objects()[x],
                    c.objects()[y],
                    images.len()
                ));
            }
        }
    }
    report.check("faithful", faithful);
    report.check("full", full);
    let missed = (0..d.object_count())
        .find(|&b| !(0..c.object_count()).any(|x| d.isomorphism(f.objects[x], b).is_some()))
        .map(|b| format!("{} is not isomorphic to any image", d.objects()[b]));
    report.check("essentially surjective", missed);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    /// Independent count: every arrow map, filtered by the functor laws.
    fn brute_force_count(c: &FiniteCategory, d: &FiniteCategory) -> usize {
        let (n, m) = (c.object_count(), c.arrow_count());
        let mut count = 0;
        let mut arrows = vec![0; m];
        loop {
            // the object map is forced by the images of identities
            let objects: Vec<usize> = (0..n).map(|x| d.source(arrows[c.identity(x)])).collect();
            let f = Functor { objects, arrows: arrows.clone() };
            if f.is_functor(c, d) {
                count += 1;
            }
            if !crate::group::advance(&mut arrows, d.arrow_count()) {
                break;
            }
        }
        count
    }

    #[test]
    fn arrow_category_has_three_endofunctors() {
        let a = corpus::arrow_category();
        let fs = enumerate_functors(&a, &a).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(brute_force_count(&a, &a), 3);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let cats = corpus::categories();
        for c in &cats {
            for d in &cats {
                if c.arrow_count() <= 6 && d.arrow_count() <= 6 {
                    assert_eq!(enumerate_functors(c, d).unwrap().len(), brute_force_count(c, d), "{c} → {d}");
                }
            }
        }
        let chain = corpus::chain3();
        // monotone self-maps of a 3-chain
        assert_eq!(enumerate_functors(&chain, &chain).unwrap().len(), 10);
    }

    #[test]
    fn equivalence_examples() {
        let a = corpus::arrow_category();
        assert!(check_equivalence(&Functor::identity(&a), &a, &a).pass());
        let constant = Functor { objects: vec![0, 0], arrows: vec![0, 0, 0] };
        let r = check_equivalence(&constant, &a, &a);
        assert!(!r.pass());
        assert!(r.checks.iter().any(|c| c.name == "essentially surjective" && c.witness.as_deref().unwrap().starts_with('b')));
    }
}
