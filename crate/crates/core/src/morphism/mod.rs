//! Straight and anti morphisms between finite groups and rings.
//!
//! A [`Morphism`] is a total table of element images plus a stored
//! [`Variance`]. Composition XORs variances; the `*`-composition and the
//! Hom/An correspondences go through the reverse morphism `1*` of the
//! source, which is group inversion or a ring's declared involution.

mod algebra;
mod enumerate;
mod factor;
mod structure;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

pub use algebra::{automorphism_algebra, natural_an_map, pointwise_ring_audit, AutomorphismAlgebra};
pub(crate) use enumerate::extend_generators;
pub use enumerate::{enumerate, DEFAULT_BOUND};
pub use factor::{factorization_classes, FactorClass};
pub use structure::{Cokernel, Structure};

/// Which composition law a morphism participates in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variance {
    Straight,
    Anti,
}

impl Variance {
    pub fn xor(self, other: Variance) -> Variance {
        if self == other {
            Variance::Straight
        } else {
            Variance::Anti
        }
    }

    pub fn is_anti(self) -> bool {
        self == Variance::Anti
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variance::Straight => "straight",
            Variance::Anti => "anti",
        }
    }
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "straight" => Ok(Variance::Straight),
            "anti" => Ok(Variance::Anti),
            other => Err(format!("unknown variance `{other}`")),
        }
    }
}

/// Which of the two laws a bare map satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    HomOnly,
    AntiOnly,
    Both,
    Neither,
}

impl Classification {
    pub fn admits(self, variance: Variance) -> bool {
        matches!(
            (self, variance),
            (Classification::Both, _)
                | (Classification::HomOnly, Variance::Straight)
                | (Classification::AntiOnly, Variance::Anti)
        )
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::HomOnly => "hom-only",
            Classification::AntiOnly => "anti-only",
            Classification::Both => "both",
            Classification::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Multiplicative,
    Additive,
    Unit,
}

/// The first pair of elements on which a map breaks a law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LawWitness {
    pub law: Law,
    pub x: usize,
    pub y: usize,
}

impl fmt::Display for LawWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.law {
            Law::Multiplicative => write!(f, "multiplicative law fails at ({}, {})", self.x, self.y),
            Law::Additive => write!(f, "additive law fails at ({}, {})", self.x, self.y),
            Law::Unit => write!(f, "unit {} is not sent to the unit", self.x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("image table has {len} entries, source has order {order}")]
    WrongLength { len: usize, order: usize },
    #[error("image {value} of element {element} is outside the target")]
    OutOfRange { element: usize, value: usize },
    #[error("cannot compose: target {left} differs from source {right}")]
    NotComposable { left: String, right: String },
    #[error("{variance} law violated: {witness}")]
    LawViolation { variance: Variance, witness: LawWitness },
    #[error("{structure} has no involution, so no reverse morphism")]
    NoInvolution { structure: String },
    #[error("expected a {expected} morphism")]
    VarianceMismatch { expected: Variance },
    #[error("enumeration needs {candidates} candidates, bound is {bound}")]
    BoundExceeded { candidates: u128, bound: u64 },
}

/// A total map of element indices with a stored variance.
#[derive(Debug)]
pub struct Morphism<S> {
    source: Arc<S>,
    target: Arc<S>,
    images: Vec<usize>,
    variance: Variance,
}

impl<S> Clone for Morphism<S> {
    fn clone(&self) -> Self {
        Self {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self.images.clone(),
            variance: self.variance,
        }
    }
}

impl<S: Structure> PartialEq for Morphism<S> {
    fn eq(&self, other: &Self) -> bool {
        self.variance == other.variance
            && self.images == other.images
            && same(&self.source, &other.source)
            && same(&self.target, &other.target)
    }
}

impl<S: Structure> Eq for Morphism<S> {}

fn same<S: PartialEq>(a: &Arc<S>, b: &Arc<S>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<S: Structure> Morphism<S> {
    /// Checks the table and the law named by `variance`.
    pub fn new(
        source: Arc<S>,
        target: Arc<S>,
        images: Vec<usize>,
        variance: Variance,
    ) -> Result<Self, MorphismError> {
        if images.len() != source.order() {
            return Err(MorphismError::WrongLength { len: images.len(), order: source.order() });
        }
        if let Some((element, &value)) = images.iter().enumerate().find(|(_, &v)| v >= target.order()) {
            return Err(MorphismError::OutOfRange { element, value });
        }
        if let Some(witness) = S::law_witness(&source, &target, &images, variance) {
            return Err(MorphismError::LawViolation { variance, witness });
        }
        Ok(Self { source, target, images, variance })
    }

    /// Skips validation; callers guarantee the law.
    pub(crate) fn from_parts(source: Arc<S>, target: Arc<S>, images: Vec<usize>, variance: Variance) -> Self {
        debug_assert!(S::law_witness(&source, &target, &images, variance).is_none());
        Self { source, target, images, variance }
    }

    pub fn identity(a: &Arc<S>) -> Self {
        Self::from_parts(a.clone(), a.clone(), (0..a.order()).collect(), Variance::Straight)
    }

    pub fn source(&self) -> &Arc<S> {
        &self.source
    }

    pub fn target(&self) -> &Arc<S> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn classification(&self) -> Classification {
        classify(&*self.source, &*self.target, &self.images)
    }

    /// The same table under the other law, if it satisfies it.
    pub fn with_variance(&self, variance: Variance) -> Result<Self, MorphismError> {
        Self::new(self.source.clone(), self.target.clone(), self.images.clone(), variance)
    }

    /// The same table into a different target of the same order.
    pub fn retarget(&self, target: Arc<S>, variance: Variance) -> Result<Self, MorphismError> {
        Self::new(self.source.clone(), target, self.images.clone(), variance)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        self.images.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.images {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// Preimage of the target's neutral element.
    pub fn kernel_members(&self) -> Vec<usize> {
        let e = self.target.neutral();
        (0..self.images.len()).filter(|&x| self.images[x] == e).collect()
    }

    pub fn image_members(&self) -> Vec<usize> {
        let mut out = self.images.clone();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Inverse of a bijection, validated under the same variance.
    pub fn inverse(&self) -> Result<Option<Self>, MorphismError> {
        if !self.is_bijective() {
            return Ok(None);
        }
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Self::new(self.target.clone(), self.source.clone(), inv, self.variance).map(Some)
    }

    /// Compact rendering used in reports and witnesses.
    pub fn describe(&self) -> String {
        let images: Vec<String> = self.images.iter().map(usize::to_string).collect();
        format!(
            "{} -> {} {} [{}]",
            self.source.name(),
            self.target.name(),
            self.variance,
            images.join(" ")
        )
    }
}

impl<S: Structure> PartialOrd for Morphism<S> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on image tables, then variance.
impl<S: Structure> Ord for Morphism<S> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.images, self.variance).cmp(&(&other.images, other.variance))
    }
}

impl<S: Structure> fmt::Display for Morphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Exhaustive law check of a bare image table.
pub fn classify<S: Structure>(source: &S, target: &S, images: &[usize]) -> Classification {
    let hom = S::law_witness(source, target, images, Variance::Straight).is_none();
    let anti = S::law_witness(source, target, images, Variance::Anti).is_none();
    match (hom, anti) {
        (true, true) => Classification::Both,
        (true, false) => Classification::HomOnly,
        (false, true) => Classification::AntiOnly,
        (false, false) => Classification::Neither,
    }
}

/// `g ∘ f` with variance `g XOR f`; the result is re-validated.
pub fn compose<S: Structure>(g: &Morphism<S>, f: &Morphism<S>) -> Result<Morphism<S>, MorphismError> {
    if !same(&f.target, &g.source) {
        return Err(MorphismError::NotComposable {
            left: f.target.name().to_string(),
            right: g.source.name().to_string(),
        });
    }
    let images = f.images.iter().map(|&x| g.images[x]).collect();
    Morphism::new(f.source.clone(), g.target.clone(), images, g.variance.xor(f.variance))
}

/// `1*` of a structure: inversion for groups, the involution for rings.
pub fn reverse_morphism<S: Structure>(a: &Arc<S>) -> Result<Morphism<S>, MorphismError> {
    let images = a.reverse_images()?;
    Morphism::new(a.clone(), a.clone(), images, Variance::Anti)
}

/// `g * f = (g ∘ f) ∘ 1*`.
pub fn star_compose<S: Structure>(g: &Morphism<S>, f: &Morphism<S>) -> Result<Morphism<S>, MorphismError> {
    for m in [g, f] {
        if !m.variance.is_anti() {
            return Err(MorphismError::VarianceMismatch { expected: Variance::Anti });
        }
    }
    let gf = compose(g, f)?;
    compose(&gf, &reverse_morphism(&f.source)?)
}

/// `f ↦ f ∘ 1*`.
pub fn corresponding_anti<S: Structure>(f: &Morphism<S>) -> Result<Morphism<S>, MorphismError> {
    if f.variance.is_anti() {
        return Err(MorphismError::VarianceMismatch { expected: Variance::Straight });
    }
    compose(f, &reverse_morphism(&f.source)?)
}

/// `f* ↦ f* ∘ 1*`.
pub fn corresponding_hom<S: Structure>(f: &Morphism<S>) -> Result<Morphism<S>, MorphismError> {
    if !f.variance.is_anti() {
        return Err(MorphismError::VarianceMismatch { expected: Variance::Anti });
    }
    compose(f, &reverse_morphism(&f.source)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group::FiniteGroup;

    fn inversion(g: &Arc<FiniteGroup>) -> Morphism<FiniteGroup> {
        reverse_morphism(g).unwrap()
    }

    #[test]
    fn classification_examples() {
        let z4 = corpus::z4();
        assert_eq!(Morphism::identity(&z4).classification(), Classification::Both);
        let s3 = corpus::s3();
        assert_eq!(inversion(&s3).classification(), Classification::AntiOnly);
        let z2 = corpus::z2();
        assert_eq!(classify(&*z2, &*z2, &[1, 0]), Classification::Neither);
    }

    #[test]
    fn variance_is_xor() {
        use Variance::*;
        assert_eq!(Anti.xor(Anti), Straight);
        assert_eq!(Anti.xor(Straight), Anti);
        assert_eq!(Straight.xor(Anti), Anti);
        assert_eq!(Straight.xor(Straight), Straight);
    }

    #[test]
    fn compositions() {
        let s3 = corpus::s3();
        let z2 = corpus::z2();
        let inv = inversion(&s3);
        let twice = compose(&inv, &inv).unwrap();
        assert_eq!(twice, Morphism::identity(&s3));

        let sign = Morphism::new(s3.clone(), z2.clone(), vec![0, 0, 0, 1, 1, 1], Variance::Straight).unwrap();
        let sign_inv = compose(&sign, &inv).unwrap();
        assert_eq!(sign_inv.variance(), Variance::Anti);
        assert_eq!(sign_inv.images(), sign.images());

        let err = compose(&inv, &sign).unwrap_err();
        assert!(matches!(err, MorphismError::NotComposable { .. }));
    }

    #[test]
    fn conjugation_after_inclusion_is_straight() {
        let s3 = corpus::s3();
        let a3 = s3.subgroup_closure(&[1]).unwrap();
        let (a3g, incl) = s3.restrict(&a3);
        let conj: Vec<usize> = (0..6).map(|x| s3.mul(s3.mul(3, x), s3.inverse(3))).collect();
        let conj = Morphism::new(s3.clone(), s3.clone(), conj, Variance::Straight).unwrap();
        let c = compose(&conj, &incl).unwrap();
        assert_eq!(c.variance(), Variance::Straight);
        assert_eq!(c.source().order(), a3g.order());
    }

    #[test]
    fn star_composition_of_inversions() {
        let s3 = corpus::s3();
        let inv = inversion(&s3);
        assert_eq!(star_compose(&inv, &inv).unwrap(), inv);
        let id = Morphism::identity(&s3);
        assert!(matches!(
            star_compose(&id, &inv),
            Err(MorphismError::VarianceMismatch { .. })
        ));
    }

    #[test]
    fn reverse_of_z2_is_identity_table() {
        let z2 = corpus::z2();
        let r = inversion(&z2);
        assert_eq!(r.images(), &[0, 1]);
        assert_eq!(r.variance(), Variance::Anti);
        let a = corresponding_anti(&Morphism::identity(&z2)).unwrap();
        assert_eq!(a.images(), &[0, 1]);
        assert_eq!(a.variance(), Variance::Anti);
    }

    #[test]
    fn ring_without_involution_has_no_reverse() {
        let m2 = corpus::m2f2();
        assert!(matches!(reverse_morphism(&m2), Err(MorphismError::NoInvolution { .. })));
    }

    #[test]
    fn rejected_tables() {
        let z2 = corpus::z2();
        assert!(matches!(
            Morphism::new(z2.clone(), z2.clone(), vec![0], Variance::Straight),
            Err(MorphismError::WrongLength { .. })
        ));
        assert!(matches!(
            Morphism::new(z2.clone(), z2.clone(), vec![0, 2], Variance::Straight),
            Err(MorphismError::OutOfRange { .. })
        ));
        assert!(matches!(
            Morphism::new(z2.clone(), z2, vec![1, 0], Variance::Anti),
            Err(MorphismError::LawViolation { .. })
        ));
    }

    #[test]
    fn inverse_of_bijective_anti_is_anti() {
        let s3 = corpus::s3();
        for f in enumerate(&s3, &s3, Variance::Anti, DEFAULT_BOUND).unwrap() {
            if let Some(inv) = f.inverse().unwrap() {
                assert!(inv.classification().admits(Variance::Anti));
            }
        }
    }
}
