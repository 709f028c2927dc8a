use rayon::prelude::*;

use super::factorable::{caf_functor, check_factorable, enumerate_factorable, FactorableFunctor};
use super::factorization::{caf, FactorizationCategory};
use super::finite::FiniteCategory;
use super::functor::{enumerate_functors, Functor};
use super::CategoryError;
use crate::report::TheoremReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdjunctionConfig {
    /// Largest number of naturality squares to check.
    pub bound: u64,
    /// Keep only additive functors and additive factorable functors.
    pub additive: bool,
}

impl Default for AdjunctionConfig {
    fn default() -> Self {
        Self { bound: 10_000_000, additive: false }
    }
}

/// Hom-sets of Cat and Fa between every pair of corpus entries.
struct Homs {
    cats: Vec<FiniteCategory>,
    facs: Vec<FactorizationCategory>,
    functors: Vec<Vec<Vec<Functor>>>,
    factorable: Vec<Vec<Vec<FactorableFunctor>>>,
    free_phi: usize,
}

impl Homs {
    fn build(cats: &[FiniteCategory], additive: bool) -> Result<Self, CategoryError> {
        let facs: Vec<FactorizationCategory> = cats.iter().map(caf).collect();
        let n = cats.len();
        let mut functors = vec![vec![Vec::new(); n]; n];
        let mut factorable = vec![vec![Vec::new(); n]; n];
        let mut free_phi = 0;
        for i in 0..n {
            for j in 0..n {
                let mut fs = enumerate_functors(&cats[i], &cats[j])?;
                let count = enumerate_factorable(&facs[i], &facs[j])?;
                let mut hs = count.factorable;
                free_phi += count.free_phi;
                if additive {
                    fs.retain(|f| f.is_additive(&cats[i], &cats[j]));
                    hs.retain(|h| h.is_additive(&facs[i], &facs[j]));
                }
                functors[i][j] = fs;
                factorable[i][j] = hs;
            }
        }
        Ok(Self { cats: cats.to_vec(), facs, functors, factorable, free_phi })
    }

    fn squares(&self) -> u128 {
        let n = self.cats.len();
        let mut total: u128 = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let fa = self.factorable[a][b].len() as u128;
                        let cat = self.functors[b][c].len() as u128;
                        let fa2 = self.factorable[c][d].len() as u128;
                        let cat2 = self.functors[a][b].len() as u128;
                        let catd = self.functors[c][d].len() as u128;
                        total += fa * cat * catd + cat2 * cat * fa2;
                    }
                }
            }
        }
        total
    }
}

/// `ξ(G)`: a functor `FCA(FC) → D` lifted to `FC → CAF(D)`, and `ξ'(G)`:
/// a functor `C → FCA(FD)` lifted to `CAF(C) → FD`. Both send `f*` to
/// `G(f* ∘ 1*) ∘ 1*`.
fn lift(g: &Functor, fc: &FactorizationCategory, fd: &FactorizationCategory) -> FactorableFunctor {
    FactorableFunctor::induced(g, fc, fd)
}

/// Checks `ξ` is a bijection for one pair and returns the first failure.
fn bijection(
    left: &[Functor],
    right: &[FactorableFunctor],
    fc: &FactorizationCategory,
    fd: &FactorizationCategory,
    additive: bool,
) -> Option<String> {
    let mut image: Vec<FactorableFunctor> = Vec::with_capacity(left.len());
    for g in left {
        let h = lift(g, fc, fd);
        let r = check_factorable(&h, fc, fd);
        if !r.pass() {
            return Some(format!("ξ({}) is not factorable: {}", g.describe(fc.underlying(), fd.underlying()), r.first_failure().unwrap()));
        }
        if additive && !h.is_additive(fc, fd) {
            return Some(format!("ξ({}) is not additive", g.describe(fc.underlying(), fd.underlying())));
        }
        if h.underlying() != *g {
            return Some(format!("ξ⁻¹ξ ≠ 1 at {}", g.describe(fc.underlying(), fd.underlying())));
        }
        image.push(h);
    }
    image.sort();
    let mut target = right.to_vec();
    target.sort();
    if image != target {
        return Some(format!("{} → {}: {} functors, {} factorable functors", fc.name(), fd.name(), left.len(), right.len()));
    }
    None
}

/// The adjunction `FCA ⊣ CAF` through `ξ: Hom_Cat(FCA(FC), D) ≅ Hom_Fa(FC, CAF(D))`
/// and `CAF ⊣ FCA` through `ξ': Hom_Cat(C, FCA(FD)) ≅ Hom_Fa(CAF(C), FD)`,
/// over every pair drawn from `cats` (with `FC = caf(C)`), and naturality
/// over every quadruple:
/// `ξ(g ∘ G ∘ FCA(h)) = CAF(g) ∘ ξ(G) ∘ h` and
/// `ξ'(FCA(k) ∘ G ∘ h) = k ∘ ξ'(G) ∘ CAF(h)`.
pub fn check_adjunctions(cats: &[FiniteCategory], config: AdjunctionConfig) -> Result<TheoremReport, CategoryError> {
    let id = if config.additive { "adjunctions-preadditive" } else { "adjunctions" };
    let mut report = TheoremReport::new(id, cats.iter().map(|c| c.name().to_string()));
    let homs = Homs::build(cats, config.additive)?;
    let squares = homs.squares();
    if squares > config.bound as u128 {
        return Err(CategoryError::BoundExceeded { candidates: squares, bound: config.bound });
    }
    let n = cats.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    // FC = caf(C), so ξ and ξ' share hom-sets on the corpus
    let bijections: Vec<Option<String>> = pairs
        .par_iter()
        .map(|&(i, j)| bijection(&homs.functors[i][j], &homs.factorable[i][j], &homs.facs[i], &homs.facs[j], config.additive))
        .collect();
    report.check("ξ and ξ' are bijections", bijections.into_iter().flatten().next());
    let mismatch = pairs
        .iter()
        .find(|&&(i, j)| homs.functors[i][j].len() != homs.factorable[i][j].len())
        .map(|&(i, j)| format!("{} → {}", cats[i].name(), cats[j].name()));
    report.check("|Hom_Cat(C, D)| = |Hom_Fa(caf C, caf D)|", mismatch);
    let quadruples: Vec<[usize; 4]> =
        pairs.iter().flat_map(|&(a, b)| pairs.iter().map(move |&(c, d)| [a, b, c, d])).collect();
    let left: Vec<Option<String>> = quadruples.par_iter().map(|&q| natural_left(&homs, q)).collect();
    report.check("ξ is natural in both arguments", left.into_iter().flatten().next());
    let right: Vec<Option<String>> = quadruples.par_iter().map(|&q| natural_right(&homs, q)).collect();
    report.check("ξ' is natural in both arguments", right.into_iter().flatten().next());
    let functor_total: usize = pairs.iter().map(|&(i, j)| homs.functors[i][j].len()).sum();
    report.note(format!("{functor_total} functors, {squares} naturality squares"));
    if !config.additive {
        report.note(format!("{} variance-preserving functors with a non-induced φ", homs.free_phi));
    }
    Ok(report)
}

/// Same checks restricted to the preadditive entries of `cats`, keeping
/// additive functors only.
pub fn check_preadditive_adjunctions(cats: &[FiniteCategory], bound: u64) -> Result<TheoremReport, CategoryError> {
    let preadditive: Vec<FiniteCategory> = cats.iter().filter(|c| c.additive().is_some()).cloned().collect();
    check_adjunctions(&preadditive, AdjunctionConfig { bound, additive: true })
}

/// `h: FC' → FC`, `G: FCA(FC) → D`, `g: D → D'`.
fn natural_left(homs: &Homs, [a, b, c, d]: [usize; 4]) -> Option<String> {
    let (fc1, fc, fd, fd1) = (&homs.facs[a], &homs.facs[b], &homs.facs[c], &homs.facs[d]);
    for h in &homs.factorable[a][b] {
        for big in &homs.functors[b][c] {
            let xi = lift(big, fc, fd);
            for g in &homs.functors[c][d] {
                let inner = g.then_after(big).then_after(&h.underlying());
                let lhs = lift(&inner, fc1, fd1);
                let rhs = caf_functor(g, &homs.cats[c], &homs.cats[d]).then_after(&xi).then_after(h);
                if lhs != rhs {
                    return Some(format!(
                        "h = {}, G = {}, g = {}",
                        h.describe(fc1, fc),
                        big.describe(fc.underlying(), fd.underlying()),
                        g.describe(fd.underlying(), fd1.underlying())
                    ));
                }
            }
        }
    }
    None
}

/// `h: C' → C`, `G: C → FCA(FD)`, `k: FD → FD'`.
fn natural_right(homs: &Homs, [a, b, c, d]: [usize; 4]) -> Option<String> {
    let (fc1, fc, fd, fd1) = (&homs.facs[a], &homs.facs[b], &homs.facs[c], &homs.facs[d]);
    for h in &homs.functors[a][b] {
        let lifted_h = caf_functor(h, &homs.cats[a], &homs.cats[b]);
        for big in &homs.functors[b][c] {
            let xi = lift(big, fc, fd);
            for k in &homs.factorable[c][d] {
                let inner = k.underlying().then_after(big).then_after(h);
                let lhs = lift(&inner, fc1, fd1);
                let rhs = k.then_after(&xi).then_after(&lifted_h);
                if lhs != rhs {
                    return Some(format!(
                        "h = {}, G = {}, k = {}",
                        h.describe(fc1.underlying(), fc.underlying()),
                        big.describe(fc.underlying(), fd.underlying()),
                        k.describe(fd, fd1)
                    ));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn arrow_category_counts() {
        let a = corpus::arrow_category();
        let fa = caf(&a);
        assert_eq!(enumerate_factorable(&fa, &fa).unwrap().factorable.len(), 3);
        assert_eq!(enumerate_functors(&a, &a).unwrap().len(), 3);
    }

    #[test]
    fn corpus_adjunctions_hold() {
        let r = check_adjunctions(&corpus::categories(), AdjunctionConfig::default()).unwrap();
        assert!(r.pass(), "{r}");
        let r = check_preadditive_adjunctions(&corpus::categories(), 1_000_000).unwrap();
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn bound_is_enforced() {
        let err = check_adjunctions(&corpus::categories(), AdjunctionConfig { bound: 10, additive: false }).unwrap_err();
        assert!(matches!(err, CategoryError::BoundExceeded { bound: 10, .. }));
    }

    #[test]
    fn broken_lift_breaks_naturality() {
        let m = corpus::monoid_z2();
        let fm = caf(&m);
        let g = Functor::identity(&m);
        let mut h = lift(&g, &fm, &fm);
        h.total.arrows.swap(2, 3);
        assert!(!check_factorable(&h, &fm, &fm).pass());
    }
}
