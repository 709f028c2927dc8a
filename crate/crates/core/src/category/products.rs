use super::factorization::FactorizationCategory;
use super::finite::FiniteCategory;
use crate::report::TheoremReport;

/// A product presentation `(apex; projections)` of a family of objects.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Product {
    pub family: Vec<usize>,
    pub apex: usize,
    pub projections: Vec<usize>,
}

impl Product {
    pub fn describe(&self, c: &FiniteCategory) -> String {
        let p: Vec<&str> = self.projections.iter().map(|&f| c.arrow(f).name.as_str()).collect();
        format!("({}; {})", c.objects()[self.apex], p.join(", "))
    }
}

/// Every choice of one element from each list.
pub(crate) fn tuples(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for options in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&x| {
                    let mut t = prefix.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn family_name(c: &FiniteCategory, family: &[usize]) -> String {
    family.iter().map(|&x| c.objects()[x].as_str()).collect::<Vec<_>>().join(" × ")
}

/// All product presentations of `family`, by exhaustive search of the
/// universal property.
pub fn find_products(c: &FiniteCategory, family: &[usize]) -> Vec<Product> {
    let mut out = Vec::new();
    for apex in 0..c.object_count() {
        let legs: Vec<Vec<usize>> = family.iter().map(|&x| c.hom(apex, x)).collect();
        for projections in tuples(&legs) {
            let universal = (0..c.object_count()).all(|y| {
                let cones: Vec<Vec<usize>> = family.iter().map(|&x| c.hom(y, x)).collect();
                tuples(&cones).iter().all(|cone| {
                    let mediating = c
                        .hom(y, apex)
                        .into_iter()
                        .filter(|&u| projections.iter().zip(cone).all(|(&p, &f)| c.compose(p, u) == f))
                        .count();
                    mediating == 1
                })
            });
            if universal {
                out.push(Product { family: family.to_vec(), apex, projections });
            }
        }
    }
    out
}

/// Anti-universal properties of a product `(X; p_i)`:
/// (1) every anti-cone `f_i*: Y → X_i` factors as `p_i ∘ f*` for exactly
/// one anti `f*`; (2) it factors as `p_i* ∘ f` for exactly one straight
/// `f`, where `p_i* = p_i ∘ 1*`.
pub fn check_anti_universal(fc: &FactorizationCategory, product: &Product) -> TheoremReport {
    let c = fc.underlying();
    let mut report = TheoremReport::new("anti-universal", [fc.name().to_string(), product.describe(c)]);
    let anti_projections: Vec<usize> = product.projections.iter().map(|&p| fc.correspond(p)).collect();
    let mut first = None;
    let mut second = None;
    let mut cones = 0;
    for y in 0..c.object_count() {
        let choices: Vec<Vec<usize>> = product.family.iter().map(|&x| fc.an(y, x)).collect();
        for cone in tuples(&choices) {
            cones += 1;
            let through_anti = fc
                .an(y, product.apex)
                .into_iter()
                .filter(|&u| product.projections.iter().zip(&cone).all(|(&p, &f)| fc.compose(p, u) == f))
                .count();
            if through_anti != 1 && first.is_none() {
                first = Some(format!("anti-cone {} from {} has {through_anti} mediating anti-morphisms", names(fc, &cone), c.objects()[y]));
            }
            let through_straight = fc
                .hom(y, product.apex)
                .into_iter()
                .filter(|&u| anti_projections.iter().zip(&cone).all(|(&p, &f)| fc.compose(p, u) == f))
                .count();
            if through_straight != 1 && second.is_none() {
                second = Some(format!("anti-cone {} from {} has {through_straight} mediating morphisms", names(fc, &cone), c.objects()[y]));
            }
        }
    }
    report.check("(1) unique anti f* with p_i ∘ f* = f_i*", first);
    report.check("(2) unique f with p_i* ∘ f = f_i*", second);
    report.note(format!("{cones} anti-cones"));
    report
}

fn names(fc: &FactorizationCategory, arrows: &[usize]) -> String {
    format!("({})", arrows.iter().map(|&f| fc.name_of(f)).collect::<Vec<_>>().join(", "))
}

/// Both uniqueness theorems across every pair of presentations of
/// `family`: products are related by a unique anti-isomorphism `g*` with
/// `p_i* = p'_i ∘ g*`, anti-products by a unique isomorphism `g` with
/// `p_i* = p'_i* ∘ g`.
pub fn anti_product_uniqueness(fc: &FactorizationCategory, family: &[usize]) -> TheoremReport {
    let c = fc.underlying();
    let mut report = TheoremReport::new("anti-product-uniqueness", [fc.name().to_string(), family_name(c, family)]);
    let products = find_products(c, family);
    if products.is_empty() {
        report.note(format!("no product of {}", family_name(c, family)));
        return report;
    }
    for p in &products {
        report.absorb(&p.describe(c), check_anti_universal(fc, p));
    }
    let t = fc.total();
    let mut anti_iso = None;
    let mut iso = None;
    for p in &products {
        for q in &products {
            let star = |pr: &Product| -> Vec<usize> { pr.projections.iter().map(|&x| fc.correspond(x)).collect() };
            let (ps, qs) = (star(p), star(q));
            let anti: Vec<usize> = fc
                .an(p.apex, q.apex)
                .into_iter()
                .filter(|&g| q.projections.iter().zip(&ps).all(|(&qi, &pi)| fc.compose(qi, g) == pi))
                .collect();
            let anti_ok = anti.len() == 1
                && fc.an(q.apex, p.apex).into_iter().any(|h| {
                    fc.compose(h, anti[0]) == t.identity(p.apex) && fc.compose(anti[0], h) == t.identity(q.apex)
                });
            if !anti_ok && anti_iso.is_none() {
                anti_iso = Some(format!("{} → {}: {} candidates", p.describe(c), q.describe(c), anti.len()));
            }
            let straight: Vec<usize> = c
                .hom(p.apex, q.apex)
                .into_iter()
                .filter(|&g| qs.iter().zip(&ps).all(|(&qi, &pi)| fc.compose(qi, g) == pi))
                .collect();
            let iso_ok = straight.len() == 1 && c.inverse(straight[0]).is_some();
            if !iso_ok && iso.is_none() {
                iso = Some(format!("{} → {}: {} candidates", p.describe(c), q.describe(c), straight.len()));
            }
            if p != q && anti_ok && iso_ok {
                report.witness(
                    format!("{} → {}", p.describe(c), q.describe(c)),
                    format!("g* = {}, g = {}", fc.name_of(anti[0]), c.arrow(straight[0]).name),
                );
            }
        }
    }
    report.check("products: unique anti-isomorphism with p_i* = p'_i ∘ g*", anti_iso);
    report.check("anti-products: unique isomorphism with p_i* = p'_i* ∘ g", iso);
    report.note(format!("{} presentations", products.len()));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::caf;
    use crate::corpus;

    #[test]
    fn meet_is_the_product() {
        let s = corpus::semilattice();
        let (m, x, y) = (0, 1, 2);
        let ps = find_products(&s, &[x, y]);
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].apex, m);
        assert_eq!(find_products(&s, &[m, x])[0].apex, m);
        assert_eq!(find_products(&s, &[x, x])[0].apex, x);
    }

    #[test]
    fn semilattice_anti_products() {
        let s = corpus::semilattice();
        let fc = caf(&s);
        for family in tuples(&[vec![0, 1, 2], vec![0, 1, 2]]) {
            let r = anti_product_uniqueness(&fc, &family);
            assert!(r.pass(), "{r}");
        }
    }

    #[test]
    fn monoid_presentations_differ_by_automorphism() {
        let m = corpus::monoid_z2();
        let ps = find_products(&m, &[0]);
        assert_eq!(ps.len(), 2);
        let r = anti_product_uniqueness(&caf(&m), &[0]);
        assert!(r.pass(), "{r}");
        assert!(r.witnesses.iter().any(|(_, v)| v == "g* = s*, g = s"));
    }

    #[test]
    fn products_in_small_corpora() {
        let a = corpus::arrow_category();
        assert_eq!(find_products(&a, &[1, 1]).len(), 1);
        // a × b = a in a thin category with a → b
        assert_eq!(find_products(&a, &[0, 1])[0].apex, 0);
        let f2 = corpus::f2_zero();
        // v × z = v with projections 1_v and 0_vz
        let p = &find_products(&f2, &[0, 1]);
        assert!(p.iter().any(|p| p.apex == 0));
        // v × v would need a plane
        assert!(find_products(&f2, &[0, 0]).is_empty());
    }
}
