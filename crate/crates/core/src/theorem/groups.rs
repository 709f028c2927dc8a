use std::sync::Arc;

use super::{anti_hom_core, factor_anti, factor_through, same_table, TheoremError};
use crate::group::{FiniteGroup, Subgroup};
use crate::morphism::{compose, enumerate, reverse_morphism, Classification, Morphism, Variance};
use crate::report::{render, TheoremReport, Uniqueness};

fn require_anti(phi: &Morphism<FiniteGroup>) -> Result<(), TheoremError> {
    if phi.variance() != Variance::Anti {
        return Err(TheoremError::PreconditionFailed(format!("{} is not anti", phi.describe())));
    }
    Ok(())
}

fn require_normal(g: &FiniteGroup, n: &Subgroup, label: &str) -> Result<(), TheoremError> {
    match g.normality_witness(n) {
        Some((x, c)) => Err(TheoremError::PreconditionFailed(format!(
            "{label} is not normal in {}: conjugating {x} by {c} leaves it",
            g.name()
        ))),
        None => Ok(()),
    }
}

/// First `(g, n)` with `g n g^-1` outside `inner`, for `g` in `outer`.
fn conjugation_witness(g: &FiniteGroup, outer: &Subgroup, inner: &Subgroup) -> Option<String> {
    for &x in outer.members() {
        for &n in inner.members() {
            if !inner.contains(g.mul(g.mul(x, n), g.inverse(x))) {
                return Some(format!("conjugating {n} by {x}"));
            }
        }
    }
    None
}

fn local(sub: &Subgroup, xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|x| sub.members().binary_search(x).expect("member")).collect()
}

/// `φ*: G → H` anti with `N ⊆ Ker φ*` factors uniquely as `ψ ∘ π`.
pub fn verify_anti_factorization(
    g: &Arc<FiniteGroup>,
    n: &Subgroup,
    phi: &Morphism<FiniteGroup>,
    bound: u64,
) -> Result<TheoremReport, TheoremError> {
    require_anti(phi)?;
    if **phi.source() != **g {
        return Err(TheoremError::PreconditionFailed(format!("{} does not start at {}", phi.describe(), g.name())));
    }
    require_normal(g, n, "N")?;
    let kernel = phi.kernel();
    if let Some(&x) = n.members().iter().find(|&&x| !kernel.contains(x)) {
        return Err(TheoremError::PreconditionFailed(format!(
            "N is not inside Ker φ*: φ*({x}) = {}",
            phi.apply(x)
        )));
    }
    let mut report = TheoremReport::new("anti-factorization", [g.name().to_string(), render(n.members()), phi.describe()]);
    let (_, pi) = g.quotient(n)?;
    factor_anti(&mut report, &pi, phi, bound)?;
    Ok(report)
}

/// `A/Ker φ* ≅ Im φ*` through a unique anti-isomorphism `ξ`.
pub fn verify_anti_hom_theorem(phi: &Morphism<FiniteGroup>, bound: u64) -> Result<TheoremReport, TheoremError> {
    require_anti(phi)?;
    let mut report = TheoremReport::new("anti-hom", [phi.describe()]);
    let kernel = phi.kernel();
    report.require("Ker φ* is normal", phi.source().is_normal(&kernel), || render(kernel.members()));
    let (_, pi) = phi.source().quotient(&kernel)?;
    let (onto, iota) = phi.image_factorization();
    anti_hom_core(&mut report, phi, &pi, &onto, &iota, bound)?;
    Ok(report)
}

/// For normal `C ⊆ B` in `A`: the unique anti-isomorphism
/// `ξ: A/B → (A/C)/(B/C)` with `ξ ∘ ρ* = τ ∘ π`.
pub fn verify_second_anti_iso(
    a: &Arc<FiniteGroup>,
    b: &Subgroup,
    c: &Subgroup,
    bound: u64,
) -> Result<TheoremReport, TheoremError> {
    require_normal(a, b, "B")?;
    require_normal(a, c, "C")?;
    if !c.is_subset_of(b) {
        return Err(TheoremError::PreconditionFailed("C is not inside B".into()));
    }
    let mut report = TheoremReport::new(
        "second-anti-iso",
        [a.name().to_string(), render(b.members()), render(c.members())],
    );
    report.check("C is normal in B", conjugation_witness(a, b, c));

    let (_, rho) = a.quotient(b)?;
    let (qc, pi) = a.quotient(c)?;
    let bc = qc.subgroup(&b.members().iter().map(|&x| pi.apply(x)).collect::<Vec<_>>())?;
    report.check(
        "B/C is normal in A/C",
        qc.normality_witness(&bc).map(|(x, g)| format!("conjugating {x} by {g} in A/C")),
    );
    let (qq, tau) = qc.quotient(&bc)?;
    let rho_star = compose(&rho, &reverse_morphism(a)?)?;
    report.witness("ρ*", rho_star.describe());

    let sigma = factor_through(&pi, &rho_star)
        .map_err(|(x, y)| format!("{x} and {y}"))
        .and_then(|t| Morphism::new(qc.clone(), rho.target().clone(), t, Variance::Anti).map_err(|e| e.to_string()));
    let sigma = match sigma {
        Ok(s) => {
            report.check("σ(aC) := ρ*(a) is a well-defined anti map", None);
            s
        }
        Err(w) => {
            report.check("σ(aC) := ρ*(a) is a well-defined anti map", Some(w));
            return Ok(report);
        }
    };
    report.require("σ is surjective", sigma.is_surjective(), || sigma.describe());
    report.require("Ker σ = B/C", sigma.kernel() == bc, || render(sigma.kernel().members()));

    let tau_pi = compose(&tau, &pi)?;
    let xi = factor_through(&rho_star, &tau_pi)
        .map_err(|(x, y)| format!("{x} and {y} agree under ρ* but not under τ ∘ π"))
        .and_then(|t| Morphism::new(rho.target().clone(), qq.clone(), t, Variance::Anti).map_err(|e| e.to_string()));
    let xi = match xi {
        Ok(x) => {
            report.check("ξ(ρ*(a)) := τ(π(a)) is a well-defined anti map", None);
            x
        }
        Err(w) => {
            report.check("ξ(ρ*(a)) := τ(π(a)) is a well-defined anti map", Some(w));
            return Ok(report);
        }
    };
    report.require("ξ is bijective", xi.is_bijective(), || xi.describe());
    report.check("ξ ∘ ρ* = τ ∘ π", same_table(&compose(&xi, &rho_star)?, &tau_pi));
    report.check("ξ ∘ σ = τ", same_table(&compose(&xi, &sigma)?, &tau));
    report.require("ρ* is surjective, so ξ is determined", rho_star.is_surjective(), || rho_star.describe());
    report.uniqueness = Some(Uniqueness::Surjectivity);

    let candidates = enumerate(rho.target(), &qq, Variance::Anti, bound)?;
    let mut solutions = 0;
    for l in &candidates {
        if compose(l, &rho_star)?.images() == tau_pi.images() {
            solutions += 1;
        }
    }
    report.require("enumeration finds exactly one solution", solutions == 1, || {
        format!("{solutions} of {} candidates", candidates.len())
    });
    report.note(format!("|A/B| = {}, |(A/C)/(B/C)| = {}", rho.target().order(), qq.order()));
    report.witness("ξ", xi.describe());
    Ok(report)
}

/// For a subgroup `A` and a normal `N` of `G`: `A/(A ∩ N) ≅ AN/N` through
/// the anti map `ξ` with `ξ ∘ ρ = π* ∘ ι`. The inverse direction
/// `AN/N → A/(A ∩ N)` is checked as well.
pub fn verify_third_anti_iso(
    g: &Arc<FiniteGroup>,
    a: &Subgroup,
    n: &Subgroup,
    bound: u64,
) -> Result<TheoremReport, TheoremError> {
    require_normal(g, n, "N")?;
    if a.members().iter().any(|&x| x >= g.order()) || g.subgroup(a.members()).is_err() {
        return Err(TheoremError::PreconditionFailed("A is not a subgroup".into()));
    }
    let mut report = TheoremReport::new(
        "third-anti-iso",
        [g.name().to_string(), render(a.members()), render(n.members())],
    );
    let an = match g.subgroup_product(a, n) {
        Ok(s) => {
            report.check("AN is a subgroup", None);
            s
        }
        Err(e) => {
            report.check("AN is a subgroup", Some(e.to_string()));
            return Ok(report);
        }
    };
    let a_cap_n = a.intersection(n);
    report.check("N is normal in AN", conjugation_witness(g, &an, n));
    report.check("A ∩ N is normal in A", conjugation_witness(g, a, &a_cap_n));

    let (an_g, _) = g.restrict(&an);
    let n_local = an_g.subgroup(&local(&an, n.members()))?;
    let (q, pi) = an_g.quotient(&n_local)?;
    let pi_star = compose(&pi, &reverse_morphism(&an_g)?)?;
    let (a_g, _) = g.restrict(a);
    let iota = Morphism::new(a_g.clone(), an_g.clone(), local(&an, a.members()), Variance::Straight)?;
    let phi = compose(&pi_star, &iota)?;
    report.witness("π* ∘ ι", phi.describe());
    report.require("π* ∘ ι is surjective", phi.is_surjective(), || phi.describe());
    let cap_local = a_g.subgroup(&local(a, a_cap_n.members()))?;
    report.require("Ker(π* ∘ ι) = A ∩ N", phi.kernel() == cap_local, || render(phi.kernel().members()));

    let (qa, rho) = a_g.quotient(&cap_local)?;
    let xi = factor_through(&rho, &phi)
        .map_err(|(x, y)| format!("{x} and {y}"))
        .and_then(|t| Morphism::new(qa.clone(), q.clone(), t, Variance::Anti).map_err(|e| e.to_string()));
    let xi = match xi {
        Ok(x) => {
            report.check("ξ: A/(A ∩ N) → AN/N is a well-defined anti map", None);
            x
        }
        Err(w) => {
            report.check("ξ: A/(A ∩ N) → AN/N is a well-defined anti map", Some(w));
            return Ok(report);
        }
    };
    report.require("ξ is bijective", xi.is_bijective(), || xi.describe());
    report.check("ξ ∘ ρ = π* ∘ ι", same_table(&compose(&xi, &rho)?, &phi));
    let candidates = enumerate(&qa, &q, Variance::Anti, bound)?;
    let mut solutions = 0;
    for l in &candidates {
        if compose(l, &rho)?.images() == phi.images() {
            solutions += 1;
        }
    }
    report.require("ξ is unique", solutions == 1, || format!("{solutions} of {} candidates", candidates.len()));
    report.uniqueness = Some(Uniqueness::Enumeration);

    match xi.inverse() {
        Ok(Some(back)) => {
            report.check("ξ⁻¹: AN/N → A/(A ∩ N) is an anti-isomorphism", None);
            report.check("ξ⁻¹ ∘ π* ∘ ι = ρ", same_table(&compose(&back, &phi)?, &rho));
            let reverse = enumerate(&q, &qa, Variance::Anti, bound)?;
            let mut solutions = 0;
            for l in &reverse {
                if compose(l, &phi)?.images() == rho.images() {
                    solutions += 1;
                }
            }
            report.require("ξ⁻¹ is unique", solutions == 1, || format!("{solutions} of {} candidates", reverse.len()));
            report.witness("ξ⁻¹", back.describe());
        }
        Ok(None) => {
            report.check("ξ⁻¹: AN/N → A/(A ∩ N) is an anti-isomorphism", Some("ξ is not bijective".into()));
        }
        Err(e) => {
            report.check("ξ⁻¹: AN/N → A/(A ∩ N) is an anti-isomorphism", Some(e.to_string()));
        }
    }
    report.note("the statement runs ξ from AN/N, the construction from A/(A ∩ N); both directions are checked");
    report.note(format!("|AN/N| = {}, |A/(A ∩ N)| = {}", q.order(), qa.order()));
    report.witness("ξ", xi.describe());
    Ok(report)
}

/// An anti map is a homomorphism when either side is abelian; injective
/// (surjective) anti maps are homomorphisms exactly when the source
/// (target) is abelian; a bijective map that is both forces two
/// isomorphic abelian groups.
pub fn verify_abelian_collapse(phi: &Morphism<FiniteGroup>) -> Result<TheoremReport, TheoremError> {
    require_anti(phi)?;
    let (a, b) = (phi.source(), phi.target());
    let mut report = TheoremReport::new("abelian-collapse", [phi.describe()]);
    let class = phi.classification();
    let hom = class == Classification::Both;
    report.note(format!("classification: {class}"));
    let pair = |g: &FiniteGroup| {
        g.non_commuting_pair().map(|(x, y)| format!("{x} and {y} do not commute in {}", g.name())).unwrap_or_default()
    };
    if a.is_abelian() || b.is_abelian() {
        report.require("an abelian side makes φ* a homomorphism", hom, || phi.describe());
    }
    if phi.is_injective() {
        report.require("injective: homomorphism ⟺ source abelian", hom == a.is_abelian(), || {
            if hom {
                pair(a)
            } else {
                format!("{} is abelian but φ* is not a homomorphism", a.name())
            }
        });
    }
    if phi.is_surjective() {
        report.require("surjective: homomorphism ⟺ target abelian", hom == b.is_abelian(), || {
            if hom {
                pair(b)
            } else {
                format!("{} is abelian but φ* is not a homomorphism", b.name())
            }
        });
    }
    if phi.is_bijective() && hom {
        report.require("bijective homomorphism: both sides abelian", a.is_abelian() && b.is_abelian(), || {
            format!("{}{}", pair(a), pair(b))
        });
        report.require("bijective homomorphism: φ* is an isomorphism", phi.with_variance(Variance::Straight).is_ok(), || {
            phi.describe()
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::morphism::{corresponding_anti, DEFAULT_BOUND};

    fn sign_star() -> Morphism<FiniteGroup> {
        let s3 = corpus::s3();
        let sign = Morphism::new(s3, corpus::z2(), vec![0, 0, 0, 1, 1, 1], Variance::Straight).unwrap();
        corresponding_anti(&sign).unwrap()
    }

    #[test]
    fn anti_factorization_through_a3() {
        let s3 = corpus::s3();
        let a3 = s3.subgroup_closure(&[1]).unwrap();
        let r = verify_anti_factorization(&s3, &a3, &sign_star(), DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r}");
        let r = verify_anti_factorization(&s3, &s3.trivial_subgroup(), &sign_star(), DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn anti_factorization_precondition() {
        let s3 = corpus::s3();
        let err = verify_anti_factorization(&s3, &s3.whole(), &sign_star(), DEFAULT_BOUND).unwrap_err();
        assert!(matches!(err, TheoremError::PreconditionFailed(_)));
    }

    #[test]
    fn anti_hom_theorem_on_end_s3() {
        let s3 = corpus::s3();
        let all = enumerate(&s3, &s3, Variance::Anti, DEFAULT_BOUND).unwrap();
        assert_eq!(all.len(), 10);
        for phi in &all {
            let r = verify_anti_hom_theorem(phi, DEFAULT_BOUND).unwrap();
            assert!(r.pass(), "{r}");
        }
    }

    #[test]
    fn second_anti_iso_on_d4() {
        let d4 = corpus::d4();
        let b = d4.subgroup_closure(&[1]).unwrap();
        let c = d4.subgroup_closure(&[2]).unwrap();
        let r = verify_second_anti_iso(&d4, &b, &c, DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r}");
        let r = verify_second_anti_iso(&d4, &b, &b, DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r}");
        let r = verify_second_anti_iso(&d4, &b, &d4.trivial_subgroup(), DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn third_anti_iso_instances() {
        let s3 = corpus::s3();
        let a = s3.subgroup_closure(&[3]).unwrap();
        let n = s3.subgroup_closure(&[1]).unwrap();
        let r = verify_third_anti_iso(&s3, &a, &n, DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r}");
        let r = verify_third_anti_iso(&s3, &n, &n, DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r}");
        let d4 = corpus::d4();
        let a = d4.subgroup_closure(&[4]).unwrap();
        let n = d4.subgroup_closure(&[2]).unwrap();
        let r = verify_third_anti_iso(&d4, &a, &n, DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn abelian_collapse_examples() {
        let z4 = corpus::z4();
        let inv = reverse_morphism(&z4).unwrap();
        assert_eq!(inv.classification(), Classification::Both);
        assert!(verify_abelian_collapse(&inv).unwrap().pass());
        let s3 = corpus::s3();
        let inv = reverse_morphism(&s3).unwrap();
        assert_eq!(inv.classification(), Classification::AntiOnly);
        assert!(verify_abelian_collapse(&inv).unwrap().pass());
        let q8 = corpus::q8();
        for phi in enumerate(&q8, &q8, Variance::Anti, DEFAULT_BOUND).unwrap() {
            assert!(!(phi.is_bijective() && phi.classification() == Classification::Both));
            assert!(verify_abelian_collapse(&phi).unwrap().pass());
        }
    }
}
