use super::factorization::FactorizationCategory;
use super::finite::FiniteCategory;
use super::functor::{enumerate_unchecked, Functor, MAX_ARROWS, MAX_OBJECTS};
use super::products::{check_anti_universal, find_products, tuples, Product};
use super::CategoryError;
use crate::report::TheoremReport;

/// A functor of underlying categories together with its maps
/// `φ_{x,y}: An(x, y) → An(Fx, Fy)`, stored as one arrow map on the
/// associated categories: straight ids first, then anti ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorableFunctor {
    pub total: Functor,
    straight_count: usize,
}

impl FactorableFunctor {
    pub fn new(total: Functor, straight_count: usize) -> Self {
        Self { total, straight_count }
    }

    /// `F` with the map `φ(f*) = F(f* ∘ 1*) ∘ 1*` induced on anti-morphisms.
    pub fn induced(f: &Functor, fc: &FactorizationCategory, fd: &FactorizationCategory) -> Self {
        let m = fc.straight_count();
        let mut arrows = f.arrows.clone();
        for a in m..m + fc.anti_count() {
            let straight = f.arrows[fc.correspond(a)];
            arrows.push(fd.correspond(straight));
        }
        Self { total: Functor { objects: f.objects.clone(), arrows }, straight_count: m }
    }

    pub fn underlying(&self) -> Functor {
        Functor { objects: self.total.objects.clone(), arrows: self.total.arrows[..self.straight_count].to_vec() }
    }

    /// `φ(a)` for an anti arrow `a` in total numbering.
    pub fn phi(&self, a: usize) -> usize {
        self.total.arrows[a]
    }

    /// `self ∘ inner`.
    pub fn then_after(&self, inner: &FactorableFunctor) -> FactorableFunctor {
        FactorableFunctor { total: self.total.then_after(&inner.total), straight_count: inner.straight_count }
    }

    pub fn identity(fc: &FactorizationCategory) -> Self {
        Self { total: Functor::identity(fc.total()), straight_count: fc.straight_count() }
    }

    /// Additive on Hom and on An.
    pub fn is_additive(&self, fc: &FactorizationCategory, fd: &FactorizationCategory) -> bool {
        if !self.underlying().is_additive(fc.underlying(), fd.underlying()) {
            return false;
        }
        let (Some(ca), Some(da)) = (fc.an_additive(), fd.an_additive()) else {
            return false;
        };
        let (mc, kc) = (fc.straight_count(), fc.anti_count());
        let (md, kd) = (fd.straight_count(), fd.anti_count());
        (0..kc).all(|a| {
            (0..kc).all(|b| {
                let s = ca.add[a * kc + b];
                s == super::NONE || {
                    let (fa, fb) = (self.phi(a + mc) - md, self.phi(b + mc) - md);
                    da.add[fa * kd + fb] + md == self.phi(s + mc)
                }
            })
        })
    }

    pub fn describe(&self, fc: &FactorizationCategory, fd: &FactorizationCategory) -> String {
        self.total.describe(fc.total(), fd.total())
    }
}

/// CAF on a functor: `f ↦ F(f)`, `f* ↦ F(f)*`.
pub fn caf_functor(f: &Functor, c: &FiniteCategory, d: &FiniteCategory) -> FactorableFunctor {
    let (m, md) = (c.arrow_count(), d.arrow_count());
    let mut arrows = f.arrows.clone();
    arrows.extend(f.arrows.iter().map(|&g| g + md));
    FactorableFunctor { total: Functor { objects: f.objects.clone(), arrows }, straight_count: m }
}

/// The factorable conditions: the underlying functor laws, `φ` landing in
/// `An(Fx, Fy)`, and `F(f*g*) = F(f*)F(g*)`, `F(f*g) = F(f*)F(g)`,
/// `F(fg*) = F(f)F(g*)` on every composable pair.
pub fn check_factorable(ff: &FactorableFunctor, fc: &FactorizationCategory, fd: &FactorizationCategory) -> TheoremReport {
    let mut report = TheoremReport::new("factorable", [fc.name().to_string(), fd.name().to_string()]);
    let (c, d) = (fc.total(), fd.total());
    if ff.total.objects.len() != c.object_count() || ff.total.arrows.len() != c.arrow_count() {
        report.check("maps have the right shape", Some("wrong length".into()));
        return report;
    }
    report.check("underlying functor", ff.underlying().law_violation(fc.underlying(), fd.underlying()));
    let m = fc.straight_count();
    let misplaced = (m..c.arrow_count()).find(|&a| {
        let image = ff.phi(a);
        image >= d.arrow_count()
            || fd.variance(image) != fc.variance(a)
            || d.source(image) != ff.total.objects[c.source(a)]
            || d.target(image) != ff.total.objects[c.target(a)]
    });
    report.check("(I) φ maps An(x, y) into An(Fx, Fy)", misplaced.map(|a| fc.name_of(a).to_string()));
    if !report.pass() {
        return report;
    }
    let mut mixed = [None, None, None];
    for g in 0..c.arrow_count() {
        for f in c.arrows_into(c.source(g)) {
            let slot = match (g >= m, f >= m) {
                (true, true) => 0,
                (true, false) => 1,
                (false, true) => 2,
                (false, false) => continue,
            };
            let image = ff.total.arrows[c.compose(g, f)];
            if image != d.compose(ff.total.arrows[g], ff.total.arrows[f]) && mixed[slot].is_none() {
                mixed[slot] = Some(format!("({}, {})", fc.name_of(g), fc.name_of(f)));
            }
        }
    }
    let [aa, as_, sa] = mixed;
    report.check("(II) F(f*g*) = F(f*)F(g*)", aa);
    report.check("(II) F(f*g) = F(f*)F(g)", as_);
    report.check("(II) F(fg*) = F(f)F(g*)", sa);
    let induced = FactorableFunctor::induced(&ff.underlying(), fc, fd);
    report.require("φ is the induced map", induced == *ff, || {
        let a = (m..c.arrow_count()).find(|&a| induced.phi(a) != ff.phi(a)).unwrap_or(m);
        format!("φ({}) = {}, induced {}", fc.name_of(a), fd.name_of(ff.phi(a)), fd.name_of(induced.phi(a)))
    });
    report
}

/// Factorable functors `FC → FD` counted two ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorableCount {
    /// Functors with the induced `φ`; these are the morphisms of Fa.
    pub factorable: Vec<FactorableFunctor>,
    /// Variance-preserving functors of associated categories whose `φ`
    /// differs from the induced one.
    pub free_phi: usize,
}

fn check_size(c: &FiniteCategory) -> Result<(), CategoryError> {
    if c.object_count() > MAX_OBJECTS || c.arrow_count() > MAX_ARROWS {
        return Err(CategoryError::TooLarge { name: c.name().to_string(), objects: c.object_count(), arrows: c.arrow_count() });
    }
    Ok(())
}

/// Every variance-preserving functor `C̃ → D̃`, split by whether its `φ`
/// is induced. Size limits apply to the underlying categories.
pub fn enumerate_factorable(fc: &FactorizationCategory, fd: &FactorizationCategory) -> Result<FactorableCount, CategoryError> {
    check_size(fc.underlying())?;
    check_size(fd.underlying())?;
    let all = enumerate_unchecked(fc.total(), fd.total(), |f, g| fc.variance(f) == fd.variance(g));
    let m = fc.straight_count();
    let (factorable, free): (Vec<_>, Vec<_>) = all
        .into_iter()
        .map(|total| FactorableFunctor { total, straight_count: m })
        .partition(|ff| *ff == FactorableFunctor::induced(&ff.underlying(), fc, fd));
    Ok(FactorableCount { factorable, free_phi: free.len() })
}

/// For every family of one or two objects with a product in `FC`, the
/// image presentation `(FX; φ(p_i*))` satisfies anti-universal property
/// (2) in `FD`.
pub fn check_antiproduct_preservation(
    ff: &FactorableFunctor,
    fc: &FactorizationCategory,
    fd: &FactorizationCategory,
) -> TheoremReport {
    let mut report = TheoremReport::new("anti-product-preservation", [fc.name().to_string(), fd.name().to_string(), ff.describe(fc, fd)]);
    let n = fc.underlying().object_count();
    let objects: Vec<usize> = (0..n).collect();
    let families: Vec<Vec<usize>> =
        objects.iter().map(|&x| vec![x]).chain(tuples(&[objects.clone(), objects.clone()])).collect();
    let mut failure = None;
    let mut checked = 0;
    for family in families {
        for p in find_products(fc.underlying(), &family) {
            checked += 1;
            let image = Product {
                family: family.iter().map(|&x| ff.total.objects[x]).collect(),
                apex: ff.total.objects[p.apex],
                projections: p.projections.iter().map(|&q| ff.total.arrows[q]).collect(),
            };
            // anti-projections φ(p_i*) must mediate anti-cones uniquely
            let anti: Vec<usize> = p.projections.iter().map(|&q| ff.phi(fc.correspond(q))).collect();
            let r = check_anti_universal(fd, &image);
            let unique = anti.iter().zip(&image.projections).all(|(&a, &q)| a == fd.correspond(q));
            if (!r.pass() || !unique) && failure.is_none() {
                failure = Some(format!(
                    "{} ↦ {}: {}",
                    p.describe(fc.underlying()),
                    image.describe(fd.underlying()),
                    r.first_failure().map(|c| c.to_string()).unwrap_or_else(|| "anti-projections differ".into())
                ));
            }
        }
    }
    report.check("images of anti-products are anti-products", failure);
    report.note(format!("{checked} presentations"));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{caf, enumerate_functors};
    use crate::corpus;

    #[test]
    fn lifted_identity_is_factorable() {
        for c in corpus::categories() {
            let fc = caf(&c);
            let id = caf_functor(&Functor::identity(&c), &c, &c);
            assert_eq!(id, FactorableFunctor::identity(&fc));
            assert!(check_factorable(&id, &fc, &fc).pass());
        }
    }

    #[test]
    fn broken_mixed_law_has_a_witness() {
        let m = corpus::monoid_z2();
        let fc = caf(&m);
        let mut ff = FactorableFunctor::identity(&fc);
        // φ(s*) = 1* while F stays the identity
        ff.total.arrows[3] = 2;
        let r = check_factorable(&ff, &fc, &fc);
        assert!(!r.pass());
        let mixed = r.checks.iter().find(|c| c.name == "(II) F(fg*) = F(f)F(g*)").unwrap();
        assert_eq!(mixed.witness.as_deref(), Some("(s, 1*)"));
    }

    #[test]
    fn factorable_counts_match_functor_counts() {
        let cats = corpus::categories();
        for c in &cats {
            for d in &cats {
                let n = enumerate_functors(c, d).unwrap().len();
                let count = enumerate_factorable(&caf(c), &caf(d)).unwrap();
                assert_eq!(count.factorable.len(), n, "{c} → {d}");
            }
        }
        // the s-twist on monoid_z2 is a variance-preserving functor of the
        // associated category that is not factorable
        let m = corpus::monoid_z2();
        assert!(enumerate_factorable(&caf(&m), &caf(&m)).unwrap().free_phi > 0);
    }

    #[test]
    fn preservation_on_posets() {
        let s = corpus::semilattice();
        let fc = caf(&s);
        assert!(check_antiproduct_preservation(&FactorableFunctor::identity(&fc), &fc, &fc).pass());
        // collapsing onto x keeps every meet
        let x = Functor { objects: vec![1, 1, 1], arrows: vec![1, 1, 1, 1, 1] };
        assert!(x.is_functor(&s, &s));
        let ff = caf_functor(&x, &s, &s);
        assert!(check_antiproduct_preservation(&ff, &fc, &fc).pass());
        // y ↦ x sends the meet of x and y to m over (x, x), whose product is x
        let fold = Functor { objects: vec![0, 1, 1], arrows: vec![0, 1, 1, 3, 3] };
        assert!(fold.is_functor(&s, &s));
        let r = check_antiproduct_preservation(&caf_functor(&fold, &s, &s), &fc, &fc);
        assert!(!r.pass(), "{r}");
    }
}
