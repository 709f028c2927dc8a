use std::sync::Arc;

use super::{anti_hom_core, factor_anti, TheoremError};
use crate::morphism::{Morphism, Variance};
use crate::report::{render, TheoremReport};
use crate::ring::{FiniteRing, RingIdeal, Side};

fn require_anti(phi: &Morphism<FiniteRing>) -> Result<(), TheoremError> {
    if phi.variance() != Variance::Anti {
        return Err(TheoremError::PreconditionFailed(format!("{} is not anti", phi.describe())));
    }
    Ok(())
}

/// Ring version: `I ⊆ Ker φ*` gives a unique anti `ψ: R/I → S`.
pub fn verify_ring_anti_factorization(
    r: &Arc<FiniteRing>,
    ideal: &RingIdeal,
    phi: &Morphism<FiniteRing>,
    bound: u64,
) -> Result<TheoremReport, TheoremError> {
    require_anti(phi)?;
    if **phi.source() != **r {
        return Err(TheoremError::PreconditionFailed(format!("{} does not start at {}", phi.describe(), r.name())));
    }
    if let Some((x, y)) = r.ideal_witness(ideal.members(), Side::TwoSided)? {
        return Err(TheoremError::PreconditionFailed(format!("I is not a two-sided ideal: {x}, {y}")));
    }
    let kernel = phi.kernel();
    if let Some(&x) = ideal.members().iter().find(|&&x| !kernel.contains(x)) {
        return Err(TheoremError::PreconditionFailed(format!("I is not inside Ker φ*: φ*({x}) = {}", phi.apply(x))));
    }
    let mut report =
        TheoremReport::new("ring-anti-factorization", [r.name().to_string(), render(ideal.members()), phi.describe()]);
    let (_, pi) = r.quotient_ring(ideal)?;
    factor_anti(&mut report, &pi, phi, bound)?;
    Ok(report)
}

/// Ring version: `R/Ker φ* ≅ Im φ*` through a unique anti-isomorphism.
pub fn verify_ring_anti_hom_theorem(phi: &Morphism<FiniteRing>, bound: u64) -> Result<TheoremReport, TheoremError> {
    require_anti(phi)?;
    let mut report = TheoremReport::new("ring-anti-hom", [phi.describe()]);
    let kernel = phi.kernel();
    let r = phi.source();
    report.check(
        "Ker φ* is a two-sided ideal",
        r.ideal_witness(kernel.members(), Side::TwoSided)?.map(|(x, y)| format!("{x}, {y}")),
    );
    let (_, pi) = r.quotient_ring(&kernel)?;
    let (onto, iota) = phi.image_factorization();
    anti_hom_core(&mut report, phi, &pi, &onto, &iota, bound)?;
    report.note(format!("|Ker| = {}, |Im| = {}", kernel.len(), onto.target().order()));
    Ok(report)
}

fn image_of(phi: &Morphism<FiniteRing>, xs: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = xs.iter().map(|&x| phi.apply(x)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn preimage_of(phi: &Morphism<FiniteRing>, ys: &[usize]) -> Vec<usize> {
    (0..phi.source().order()).filter(|&x| ys.binary_search(&phi.apply(x)).is_ok()).collect()
}

/// Images and preimages of subrings are subrings; for an anti-epimorphism,
/// images of left ideals are right ideals, and preimages of left ideals
/// are right ideals.
pub fn verify_subring_and_transport(phi: &Morphism<FiniteRing>) -> Result<TheoremReport, TheoremError> {
    require_anti(phi)?;
    let (a, b) = (phi.source(), phi.target());
    let mut report = TheoremReport::new("subring-transport", [phi.describe()]);
    let first_bad = |report: &mut TheoremReport, name: &str, sets: Vec<Vec<usize>>, ok: &dyn Fn(&[usize]) -> bool| {
        let count = sets.len();
        let bad = sets.into_iter().find(|s| !ok(s));
        report.check(format!("{name} ({count} cases)"), bad.map(|s| render(&s)));
    };
    first_bad(&mut report, "image of every subring is a subring", a.subrings(), &|s| b.is_subring(&image_of(phi, s)));
    first_bad(&mut report, "preimage of every subring is a subring", b.subrings(), &|s| {
        a.is_subring(&preimage_of(phi, s))
    });
    let left_a: Vec<Vec<usize>> = a.ideals(Side::Left).into_iter().map(|i| i.members().to_vec()).collect();
    let left_b: Vec<Vec<usize>> = b.ideals(Side::Left).into_iter().map(|i| i.members().to_vec()).collect();
    if phi.is_surjective() {
        first_bad(&mut report, "image of every left ideal is a right ideal", left_a, &|s| {
            b.is_ideal(&image_of(phi, s), Side::Right)
        });
        first_bad(&mut report, "preimage of every left ideal is a right ideal", left_b, &|s| {
            a.is_ideal(&preimage_of(phi, s), Side::Right)
        });
    } else {
        report.note("not surjective: ideal transport not applicable");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::morphism::{reverse_morphism, DEFAULT_BOUND};

    #[test]
    fn z4_mod_two() {
        let z4 = corpus::z4_ring();
        let i = z4.ideal(&[0, 2], Side::TwoSided).unwrap();
        let phi = Morphism::new(z4.clone(), corpus::z2_ring(), vec![0, 1, 0, 1], Variance::Anti).unwrap();
        let r = verify_ring_anti_factorization(&z4, &i, &phi, DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r}");
        let r = verify_ring_anti_hom_theorem(&phi, DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn t2_involution() {
        let t2 = corpus::t2f2();
        let s = reverse_morphism(&t2).unwrap();
        let r = verify_ring_anti_hom_theorem(&s, DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r}");
        assert_eq!(s.kernel().members(), &[0]);
        let r = verify_subring_and_transport(&s).unwrap();
        assert!(r.pass(), "{r}");
        // the strictly upper ideal is carried to a right ideal
        assert!(t2.is_ideal(&image_of(&s, &[0, 2]), Side::Right));
    }

    #[test]
    fn t2_onto_diagonal() {
        let t2 = corpus::t2f2();
        let v = corpus::z2xz2_ring();
        // [[a,b],[0,c]] ↦ (c, a), index 2c + a
        let images = (0..8).map(|x| 2 * ((x >> 2) & 1) + (x & 1)).collect();
        let phi = Morphism::new(t2.clone(), v, images, Variance::Anti).unwrap();
        let i = t2.ideal(&[0, 2], Side::TwoSided).unwrap();
        let r = verify_ring_anti_factorization(&t2, &i, &phi, DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r}");
        let r = verify_ring_anti_hom_theorem(&phi, DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r}");
        let r = verify_subring_and_transport(&phi).unwrap();
        assert!(r.pass(), "{r}");
    }
}
