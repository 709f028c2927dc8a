use std::collections::BTreeSet;
use std::sync::Arc;

use super::enumerate::additive_maps;
use super::structure::rng_law_witness;
use super::{compose, corresponding_anti, enumerate, reverse_morphism, star_compose, Morphism, MorphismError, Variance};
use crate::group::FiniteGroup;
use crate::report::{render, TheoremReport};
use crate::ring::{FiniteRing, RingIdeal};

/// Automorphisms and anti-automorphisms of a group as groups in their own
/// right, and the union of both under ordinary composition.
#[derive(Debug, Clone)]
pub struct AutomorphismAlgebra {
    pub automorphisms: Vec<Morphism<FiniteGroup>>,
    pub anti_automorphisms: Vec<Morphism<FiniteGroup>>,
    /// `(Hom.Is, ∘)`, element `i` is `automorphisms[i]`.
    pub hom_group: Option<Arc<FiniteGroup>>,
    /// `(An.Is, *)`, element `i` is `anti_automorphisms[i]`.
    pub anti_group: Option<Arc<FiniteGroup>>,
    /// `f ↦ f ∘ 1*` as an index map.
    pub isomorphism: Vec<usize>,
    /// Distinct image tables of `Hom.Is ∪ An.Is`, sorted.
    pub union_tables: Vec<Vec<usize>>,
    pub union_group: Option<Arc<FiniteGroup>>,
    pub report: TheoremReport,
}

fn index_of<T: Ord>(sorted: &[T], item: &T) -> Option<usize> {
    sorted.binary_search(item).ok()
}

fn group_from_rule(
    name: &str,
    n: usize,
    mut rule: impl FnMut(usize, usize) -> Result<Option<usize>, MorphismError>,
) -> Result<Result<FiniteGroup, String>, MorphismError> {
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            match rule(i, j)? {
                Some(k) => table.push(k),
                None => return Ok(Err(format!("product of elements {i} and {j} leaves the set"))),
            }
        }
    }
    Ok(FiniteGroup::from_flat(name.to_string(), n, table).map_err(|e| e.to_string()))
}

pub fn automorphism_algebra(g: &Arc<FiniteGroup>, bound: u64) -> Result<AutomorphismAlgebra, MorphismError> {
    let mut report = TheoremReport::new("automorphism-algebra", [g.name()]);
    let automorphisms: Vec<_> =
        enumerate(g, g, Variance::Straight, bound)?.into_iter().filter(Morphism::is_bijective).collect();
    let anti_automorphisms: Vec<_> =
        enumerate(g, g, Variance::Anti, bound)?.into_iter().filter(Morphism::is_bijective).collect();

    let hom = group_from_rule("Hom.Is", automorphisms.len(), |i, j| {
        Ok(index_of(&automorphisms, &compose(&automorphisms[i], &automorphisms[j])?))
    })?;
    let anti = group_from_rule("An.Is", anti_automorphisms.len(), |i, j| {
        Ok(index_of(&anti_automorphisms, &star_compose(&anti_automorphisms[i], &anti_automorphisms[j])?))
    })?;
    report.check("(Hom.Is, ∘) is a group", hom.as_ref().err().cloned());
    report.check("(An.Is, *) is a group", anti.as_ref().err().cloned());
    let hom_group = hom.ok().map(Arc::new);
    let anti_group = anti.ok().map(Arc::new);

    let mut isomorphism = Vec::with_capacity(automorphisms.len());
    for f in &automorphisms {
        match index_of(&anti_automorphisms, &corresponding_anti(f)?) {
            Some(k) => isomorphism.push(k),
            None => {
                report.check("f ∘ 1* lands in An.Is", Some(f.describe()));
                break;
            }
        }
    }
    if isomorphism.len() == automorphisms.len() {
        let distinct: BTreeSet<usize> = isomorphism.iter().copied().collect();
        report.require("f ↦ f ∘ 1* is a bijection", distinct.len() == anti_automorphisms.len(), || {
            format!("{} automorphisms map onto {} of {} anti-automorphisms", automorphisms.len(), distinct.len(), anti_automorphisms.len())
        });
        if let (Some(h), Some(a)) = (&hom_group, &anti_group) {
            let bad = (0..h.order())
                .flat_map(|i| (0..h.order()).map(move |j| (i, j)))
                .find(|&(i, j)| isomorphism[h.mul(i, j)] != a.mul(isomorphism[i], isomorphism[j]));
            report.check(
                "f ↦ f ∘ 1* is a homomorphism",
                bad.map(|(i, j)| format!("{} and {}", automorphisms[i].describe(), automorphisms[j].describe())),
            );
        }
        report.witness("isomorphism", render(&isomorphism));
    }

    let union_tables: Vec<Vec<usize>> = automorphisms
        .iter()
        .chain(&anti_automorphisms)
        .map(|m| m.images().to_vec())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let union = group_from_rule("(An+Hom).Is", union_tables.len(), |i, j| {
        let composed: Vec<usize> = union_tables[j].iter().map(|&x| union_tables[i][x]).collect();
        Ok(index_of(&union_tables, &composed))
    })?;
    report.check("(An+Hom).Is is a group under ∘", union.as_ref().err().cloned());
    let union_group = union.ok().map(Arc::new);
    if let Some(u) = &union_group {
        let members: Vec<usize> =
            automorphisms.iter().filter_map(|f| index_of(&union_tables, &f.images().to_vec())).collect();
        match u.subgroup(&members) {
            Ok(sub) => {
                report.check(
                    "Hom.Is is normal in (An+Hom).Is",
                    u.normality_witness(&sub).map(|(n, c)| {
                        format!("conjugating {} by {}", render(&union_tables[n]), render(&union_tables[c]))
                    }),
                );
                report.note(format!(
                    "union order {}, Hom.Is order {}, index {}",
                    u.order(),
                    sub.len(),
                    u.order() / sub.len()
                ));
            }
            Err(e) => {
                report.check("Hom.Is is a subgroup of (An+Hom).Is", Some(e.to_string()));
            }
        }
    }

    let shared = automorphisms
        .iter()
        .find(|f| anti_automorphisms.iter().any(|a| a.images() == f.images()));
    if g.is_abelian() {
        report.require("abelian: Hom.Is and An.Is share every table", union_tables.len() == automorphisms.len(), || {
            format!("{} distinct tables for {} automorphisms", union_tables.len(), automorphisms.len())
        });
    } else {
        report.check("non-abelian: Hom.Is ∩ An.Is = ∅", shared.map(Morphism::describe));
    }

    Ok(AutomorphismAlgebra {
        automorphisms,
        anti_automorphisms,
        hom_group,
        anti_group,
        isomorphism,
        union_tables,
        union_group,
        report,
    })
}

/// Additive maps that are (anti-)multiplicative, without requiring `1 ↦ 1`.
/// Pointwise sums never preserve the identity, so the pointwise operations
/// are audited on these families.
pub(crate) fn rng_maps(
    a: &FiniteRing,
    b: &FiniteRing,
    variance: Variance,
    bound: u64,
) -> Result<Vec<Vec<usize>>, MorphismError> {
    let mut maps: Vec<Vec<usize>> = additive_maps(a, b, bound)?
        .into_iter()
        .filter(|m| rng_law_witness(a, b, m, variance).is_none())
        .collect();
    maps.sort_unstable();
    Ok(maps)
}

fn pointwise(b: &FiniteRing, f: &[usize], g: &[usize], op: fn(&FiniteRing, usize, usize) -> usize) -> Vec<usize> {
    f.iter().zip(g).map(|(&x, &y)| op(b, x, y)).collect()
}

/// Audits one family; returns the pointwise ring when it is closed.
fn audit_family(
    report: &mut TheoremReport,
    label: &str,
    b: &FiniteRing,
    family: &[Vec<usize>],
) -> Option<FiniteRing> {
    let n = family.len();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    let mut add_fail = None;
    let mut mul_fail = None;
    for f in family {
        for g in family {
            let sum = pointwise(b, f, g, FiniteRing::add);
            let prod = pointwise(b, f, g, FiniteRing::mul);
            match index_of(family, &sum) {
                Some(k) => add.push(k),
                None => {
                    add_fail.get_or_insert_with(|| format!("f = {}, g = {}, f + g = {}", render(f), render(g), render(&sum)));
                }
            }
            match index_of(family, &prod) {
                Some(k) => mul.push(k),
                None => {
                    mul_fail.get_or_insert_with(|| format!("f = {}, g = {}, f g = {}", render(f), render(g), render(&prod)));
                }
            }
        }
    }
    let closed_add = report.check(format!("{label}: closed under pointwise +"), add_fail);
    let closed_mul = report.check(format!("{label}: closed under pointwise ·"), mul_fail);
    if !(closed_add && closed_mul) {
        return None;
    }
    match FiniteRing::from_flat(label.to_string(), n, add, mul, None) {
        Ok(r) => {
            report.check(format!("{label}: pointwise tables form a ring with identity"), None);
            report.witness(format!("{label} identity"), render(&family[r.one()]));
            Some(r)
        }
        Err(e) => {
            report.check(format!("{label}: pointwise tables form a ring with identity"), Some(e.to_string()));
            None
        }
    }
}

/// Closure of `Hom(A, B)` and `An(A, B)` under pointwise `+` and `·`.
///
/// Audited on the families of additive, (anti-)multiplicative maps; the
/// unital sets are never closed under `+` (as `1 + 1` shows) and are only
/// noted. Failures carry the offending pair.
pub fn pointwise_ring_audit(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>, bound: u64) -> Result<TheoremReport, MorphismError> {
    let mut report = TheoremReport::new("pointwise-ring", [a.name(), b.name()]);
    let hom = rng_maps(a, b, Variance::Straight, bound)?;
    let anti = rng_maps(a, b, Variance::Anti, bound)?;
    report.note(format!("{} multiplicative and {} anti-multiplicative additive maps", hom.len(), anti.len()));
    let unital = enumerate(a, b, Variance::Straight, bound)?;
    if let Some(f) = unital.first() {
        let doubled = pointwise(b, f.images(), f.images(), FiniteRing::add);
        if doubled[a.one()] != b.one() {
            report.note(format!("unital Hom is not closed under +: f + f sends 1 to {}", doubled[a.one()]));
        }
    }
    let hom_ring = audit_family(&mut report, "Hom", b, &hom);
    let anti_ring = audit_family(&mut report, "An", b, &anti);
    match reverse_morphism(a) {
        Ok(rev) => {
            let image: Vec<Vec<usize>> =
                hom.iter().map(|f| rev.images().iter().map(|&x| f[x]).collect()).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            report.require("f ↦ f ∘ 1* is a bijection Hom → An", sorted == anti, || {
                format!("{} tables map to a set differing from the {} anti tables", hom.len(), anti.len())
            });
            if let (Some(h), Some(an)) = (&hom_ring, &anti_ring) {
                let idx: Vec<usize> = image.iter().map(|t| index_of(&anti, t).unwrap_or(usize::MAX)).collect();
                let bad = (0..h.order()).flat_map(|i| (0..h.order()).map(move |j| (i, j))).find(|&(i, j)| {
                    idx[h.add(i, j)] != an.add(idx[i], idx[j]) || idx[h.mul(i, j)] != an.mul(idx[i], idx[j])
                });
                report.check(
                    "f ↦ f ∘ 1* is a ring isomorphism",
                    bad.map(|(i, j)| format!("{} and {}", render(&hom[i]), render(&hom[j]))),
                );
            }
        }
        Err(e) => report.note(format!("no correspondence: {e}")),
    }
    Ok(report)
}

/// The map `An(R, R) → An(R, R/I)`, `f ↦ π ∘ f`, on the additive
/// anti-multiplicative maps: well-definedness, and compatibility with the
/// pointwise operations wherever they stay inside the family.
pub fn natural_an_map(r: &Arc<FiniteRing>, ideal: &RingIdeal, bound: u64) -> Result<TheoremReport, MorphismError> {
    let mut report = TheoremReport::new("natural-an-map", [r.name().to_string(), render(ideal.members())]);
    let (q, pi) = match r.quotient_ring(ideal) {
        Ok(x) => x,
        Err(e) => {
            report.check("ideal is two-sided", Some(e.to_string()));
            return Ok(report);
        }
    };
    let source = rng_maps(r, r, Variance::Anti, bound)?;
    let target = rng_maps(r, &q, Variance::Anti, bound)?;
    let image: Vec<Vec<usize>> = source.iter().map(|f| f.iter().map(|&x| pi.apply(x)).collect()).collect();
    report.note(format!("{} maps in the source family, {} in the target family", source.len(), target.len()));
    let outside = source.iter().zip(&image).find(|(_, t)| index_of(&target, *t).is_none());
    report.check(
        "π ∘ f lies in An(R, R/I) for every f",
        outside.map(|(f, t)| format!("f = {}, π ∘ f = {}", render(f), render(t))),
    );
    let unital = enumerate(r, r, Variance::Anti, bound)?;
    let unital_bad = unital.iter().find(|f| {
        let t: Vec<usize> = f.images().iter().map(|&x| pi.apply(x)).collect();
        Morphism::new(r.clone(), q.clone(), t, Variance::Anti).is_err()
    });
    report.check("unital anti maps go to unital anti maps", unital_bad.map(Morphism::describe));

    let mut add_pairs = 0;
    let mut mul_pairs = 0;
    let mut add_fail = None;
    let mut mul_fail = None;
    for (i, f) in source.iter().enumerate() {
        for (j, g) in source.iter().enumerate() {
            let sum = pointwise(r, f, g, FiniteRing::add);
            if let Some(k) = index_of(&source, &sum) {
                add_pairs += 1;
                if image[k] != pointwise(&q, &image[i], &image[j], FiniteRing::add) {
                    add_fail.get_or_insert_with(|| format!("f = {}, g = {}", render(f), render(g)));
                }
            }
            let prod = pointwise(r, f, g, FiniteRing::mul);
            if let Some(k) = index_of(&source, &prod) {
                mul_pairs += 1;
                if image[k] != pointwise(&q, &image[i], &image[j], FiniteRing::mul) {
                    mul_fail.get_or_insert_with(|| format!("f = {}, g = {}", render(f), render(g)));
                }
            }
        }
    }
    report.check("additive where f + g is defined", add_fail);
    report.check("multiplicative where f g is defined", mul_fail);
    report.note(format!("{add_pairs} sums and {mul_pairs} products stayed inside the family"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::morphism::DEFAULT_BOUND;
    use crate::ring::Side;

    #[test]
    fn s3_automorphism_algebra() {
        let alg = automorphism_algebra(&corpus::s3(), DEFAULT_BOUND).unwrap();
        assert!(alg.report.pass(), "{}", alg.report);
        assert_eq!(alg.hom_group.as_ref().unwrap().order(), 6);
        assert_eq!(alg.anti_group.as_ref().unwrap().order(), 6);
        assert_eq!(alg.union_group.as_ref().unwrap().order(), 12);
    }

    #[test]
    fn z2_collapses() {
        let alg = automorphism_algebra(&corpus::z2(), DEFAULT_BOUND).unwrap();
        assert!(alg.report.pass(), "{}", alg.report);
        assert_eq!(alg.union_tables.len(), 1);
    }

    #[test]
    fn pointwise_audit_on_z2_passes() {
        let z2 = corpus::z2_ring();
        let report = pointwise_ring_audit(&z2, &z2, DEFAULT_BOUND).unwrap();
        assert!(report.pass(), "{report}");
    }

    #[test]
    fn pointwise_audit_on_t2_fails_with_witness() {
        let t2 = corpus::t2f2();
        let report = pointwise_ring_audit(&t2, &t2, DEFAULT_BOUND).unwrap();
        assert!(!report.pass());
        assert!(report.first_failure().unwrap().witness.is_some());
    }

    #[test]
    fn natural_map_on_z4() {
        let z4 = corpus::z4_ring();
        let i = z4.ideal(&[0, 2], Side::TwoSided).unwrap();
        let report = natural_an_map(&z4, &i, DEFAULT_BOUND).unwrap();
        assert!(report.pass(), "{report}");
    }
}
