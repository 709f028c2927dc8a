use std::fmt::Debug;
use std::sync::Arc;

use super::enumerate::{additive_maps, group_maps};
use super::{Law, LawWitness, Morphism, MorphismError, Variance};
use crate::group::{FiniteGroup, Subgroup};
use crate::ring::{FiniteRing, RingIdeal, Side};

/// A finite carrier that morphisms can run between.
pub trait Structure: Debug + PartialEq + Send + Sync + Sized + 'static {
    /// "group" or "ring".
    const KIND: &'static str;

    fn name(&self) -> &str;

    fn order(&self) -> usize;

    /// The element a kernel is the preimage of.
    fn neutral(&self) -> usize;

    /// First violation of the law of `variance`, if any.
    fn law_witness(source: &Self, target: &Self, images: &[usize], variance: Variance) -> Option<LawWitness>;

    /// Image table of the reverse morphism `1*`.
    fn reverse_images(&self) -> Result<Vec<usize>, MorphismError>;

    /// Every straight image table, unsorted.
    fn straight_images(source: &Self, target: &Self, bound: u64) -> Result<Vec<Vec<usize>>, MorphismError>;

    /// Every anti image table, unsorted.
    fn anti_images(source: &Self, target: &Self, bound: u64) -> Result<Vec<Vec<usize>>, MorphismError>;
}

impl Structure for FiniteGroup {
    const KIND: &'static str = "group";

    fn name(&self) -> &str {
        FiniteGroup::name(self)
    }

    fn order(&self) -> usize {
        FiniteGroup::order(self)
    }

    fn neutral(&self) -> usize {
        self.identity()
    }

    fn law_witness(a: &Self, b: &Self, m: &[usize], variance: Variance) -> Option<LawWitness> {
        for x in a.elements() {
            for y in a.elements() {
                let lhs = m[a.mul(x, y)];
                let rhs = match variance {
                    Variance::Straight => b.mul(m[x], m[y]),
                    Variance::Anti => b.mul(m[y], m[x]),
                };
                if lhs != rhs {
                    return Some(LawWitness { law: Law::Multiplicative, x, y });
                }
            }
        }
        None
    }

    fn reverse_images(&self) -> Result<Vec<usize>, MorphismError> {
        Ok(self.elements().map(|x| self.inverse(x)).collect())
    }

    fn straight_images(a: &Self, b: &Self, bound: u64) -> Result<Vec<Vec<usize>>, MorphismError> {
        group_maps(a, b, bound)
    }

    /// Every anti-homomorphism is a homomorphism followed by inversion.
    fn anti_images(a: &Self, b: &Self, bound: u64) -> Result<Vec<Vec<usize>>, MorphismError> {
        Ok(group_maps(a, b, bound)?
            .into_iter()
            .map(|m| a.elements().map(|x| m[a.inverse(x)]).collect())
            .collect())
    }
}

impl Structure for FiniteRing {
    const KIND: &'static str = "ring";

    fn name(&self) -> &str {
        FiniteRing::name(self)
    }

    fn order(&self) -> usize {
        FiniteRing::order(self)
    }

    fn neutral(&self) -> usize {
        self.zero()
    }

    fn law_witness(a: &Self, b: &Self, m: &[usize], variance: Variance) -> Option<LawWitness> {
        rng_law_witness(a, b, m, variance).or_else(|| {
            (m[a.one()] != b.one()).then_some(LawWitness { law: Law::Unit, x: a.one(), y: a.one() })
        })
    }

    fn reverse_images(&self) -> Result<Vec<usize>, MorphismError> {
        self.involution()
            .map(<[usize]>::to_vec)
            .ok_or_else(|| MorphismError::NoInvolution { structure: self.name().to_string() })
    }

    fn straight_images(a: &Self, b: &Self, bound: u64) -> Result<Vec<Vec<usize>>, MorphismError> {
        Ok(additive_maps(a, b, bound)?
            .into_iter()
            .filter(|m| Self::law_witness(a, b, m, Variance::Straight).is_none())
            .collect())
    }

    /// `An(A, B)` is `Hom(A, B^op)` on the same tables.
    fn anti_images(a: &Self, b: &Self, bound: u64) -> Result<Vec<Vec<usize>>, MorphismError> {
        Self::straight_images(a, &b.opposite(), bound)
    }
}

/// Additive and (anti-)multiplicative, without the unit condition.
pub(crate) fn rng_law_witness(a: &FiniteRing, b: &FiniteRing, m: &[usize], variance: Variance) -> Option<LawWitness> {
    let n = a.order();
    for x in 0..n {
        for y in 0..n {
            if m[a.add(x, y)] != b.add(m[x], m[y]) {
                return Some(LawWitness { law: Law::Additive, x, y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let rhs = match variance {
                Variance::Straight => b.mul(m[x], m[y]),
                Variance::Anti => b.mul(m[y], m[x]),
            };
            if m[a.mul(x, y)] != rhs {
                return Some(LawWitness { law: Law::Multiplicative, x, y });
            }
        }
    }
    None
}

/// The cokernel of a group or ring morphism, when it exists.
#[derive(Debug, Clone)]
pub enum Cokernel<S> {
    Quotient { quotient: Arc<S>, projection: Morphism<S> },
    /// The image is not normal (an ideal): `conjugator` moves `element` out.
    Undefined { element: usize, conjugator: usize },
}

impl Morphism<FiniteGroup> {
    pub fn kernel(&self) -> Subgroup {
        self.source().subgroup(&self.kernel_members()).expect("kernel is a subgroup")
    }

    pub fn image(&self) -> Subgroup {
        self.target().subgroup(&self.image_members()).expect("image is a subgroup")
    }

    /// `B / Im`, defined only when the image is normal in `B`.
    pub fn cokernel(&self) -> Cokernel<FiniteGroup> {
        let image = self.image();
        match self.target().normality_witness(&image) {
            Some((element, conjugator)) => Cokernel::Undefined { element, conjugator },
            None => {
                let (quotient, projection) = self.target().quotient(&image).expect("normal image");
                Cokernel::Quotient { quotient, projection }
            }
        }
    }

    /// Corestriction to the image, plus the inclusion of the image.
    pub fn image_factorization(&self) -> (Morphism<FiniteGroup>, Morphism<FiniteGroup>) {
        let image = self.image();
        let (sub, incl) = self.target().restrict(&image);
        let local = self.images().iter().map(|y| image.members().binary_search(y).expect("in image")).collect();
        let onto = Morphism::from_parts(self.source().clone(), sub, local, self.variance());
        (onto, incl)
    }
}

impl Morphism<FiniteRing> {
    pub fn kernel(&self) -> RingIdeal {
        RingIdeal::from_sorted(self.kernel_members(), Side::TwoSided)
    }

    /// Members of the image subring.
    pub fn image(&self) -> Vec<usize> {
        self.image_members()
    }

    /// `B / Im`, defined only when the image is a two-sided ideal, which for
    /// a unital image means the whole ring.
    pub fn cokernel(&self) -> Cokernel<FiniteRing> {
        let image = self.image();
        match self.target().ideal_witness(&image, Side::TwoSided).expect("in range") {
            Some((element, conjugator)) => Cokernel::Undefined { element, conjugator },
            None => {
                let ideal = self.target().ideal(&image, Side::TwoSided).expect("checked");
                let (quotient, projection) = self.target().quotient_ring(&ideal).expect("ideal");
                Cokernel::Quotient { quotient, projection }
            }
        }
    }

    pub fn image_factorization(&self) -> (Morphism<FiniteRing>, Morphism<FiniteRing>) {
        let image = self.image();
        let (sub, incl) = self.target().restrict(&image).expect("image is a subring");
        let local = self.images().iter().map(|y| image.binary_search(y).expect("in image")).collect();
        let onto = Morphism::from_parts(self.source().clone(), sub, local, self.variance());
        (onto, incl)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::morphism::{reverse_morphism, Classification};

    #[test]
    fn sign_kernel_is_a3() {
        let s3 = corpus::s3();
        let sign = Morphism::new(s3.clone(), corpus::z2(), vec![0, 0, 0, 1, 1, 1], Variance::Straight).unwrap();
        assert_eq!(sign.kernel().members(), &[0, 1, 2]);
        assert!(matches!(sign.cokernel(), Cokernel::Quotient { .. }));
    }

    #[test]
    fn inclusion_of_transposition_has_no_cokernel() {
        let s3 = corpus::s3();
        let t = s3.subgroup_closure(&[3]).unwrap();
        let (_, incl) = s3.restrict(&t);
        assert!(incl.kernel().members() == [0]);
        match incl.cokernel() {
            Cokernel::Undefined { element, conjugator } => {
                assert_eq!(element, 3);
                assert!(!t.contains(s3.mul(s3.mul(conjugator, element), s3.inverse(conjugator))));
            }
            Cokernel::Quotient { .. } => panic!("image is not normal"),
        }
    }

    #[test]
    fn involution_classifications() {
        for r in corpus::rings() {
            if let Ok(s) = reverse_morphism(&r) {
                let expected = if r.is_commutative() { Classification::Both } else { Classification::AntiOnly };
                assert_eq!(s.classification(), expected, "{}", r.name());
            }
        }
    }

    #[test]
    fn ring_cokernels() {
        let z4 = corpus::z4_ring();
        let id = Morphism::identity(&z4);
        assert!(matches!(id.cokernel(), Cokernel::Quotient { .. }));
        let t2 = corpus::t2f2();
        // diagonal matrices [[a,0],[0,c]] are indices 0, 1, 4, 5
        let (_, incl) = t2.restrict(&[0, 1, 4, 5]).unwrap();
        assert!(matches!(incl.cokernel(), Cokernel::Undefined { .. }));
    }
}
