use std::collections::BTreeMap;
use std::sync::Arc;

use super::{compose, enumerate, Morphism, MorphismError, Structure, Variance};

/// Composable anti pairs `(f1, f2)` through `middle` with `f2 ∘ f1 = composite`.
#[derive(Debug, Clone)]
pub struct FactorClass<S> {
    pub composite: Morphism<S>,
    pub middle: Arc<S>,
    pub pairs: Vec<(Morphism<S>, Morphism<S>)>,
}

/// Partitions `An(A, B) × An(B, C)` by composite, ordered by composite.
pub fn factorization_classes<S: Structure>(
    a: &Arc<S>,
    b: &Arc<S>,
    c: &Arc<S>,
    bound: u64,
) -> Result<Vec<FactorClass<S>>, MorphismError> {
    let first = enumerate(a, b, Variance::Anti, bound)?;
    let second = enumerate(b, c, Variance::Anti, bound)?;
    let mut classes: BTreeMap<Vec<usize>, FactorClass<S>> = BTreeMap::new();
    for f1 in &first {
        for f2 in &second {
            let composite = compose(f2, f1)?;
            classes
                .entry(composite.images().to_vec())
                .or_insert_with(|| FactorClass { composite, middle: b.clone(), pairs: Vec::new() })
                .pairs
                .push((f1.clone(), f2.clone()));
        }
    }
    Ok(classes.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group::FiniteGroup;
    use crate::morphism::DEFAULT_BOUND;

    #[test]
    fn z2_has_two_classes_of_four_pairs() {
        let z2 = corpus::z2();
        let classes = factorization_classes(&z2, &z2, &z2, DEFAULT_BOUND).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes.iter().map(|c| c.pairs.len()).sum::<usize>(), 4);
    }

    #[test]
    fn trivial_middle_gives_one_class() {
        let s3 = corpus::s3();
        let one = Arc::new(FiniteGroup::from_table("1", &[vec![0]]).unwrap());
        let classes = factorization_classes(&s3, &one, &s3, DEFAULT_BOUND).unwrap();
        assert_eq!(classes.len(), 1);
        assert!(classes[0].composite.images().iter().all(|&x| x == s3.identity()));
    }

    #[test]
    fn composites_through_s3_are_straight_endomorphisms() {
        let s3 = corpus::s3();
        let homs = enumerate(&s3, &s3, Variance::Straight, DEFAULT_BOUND).unwrap();
        for class in factorization_classes(&s3, &s3, &s3, DEFAULT_BOUND).unwrap() {
            assert_eq!(class.composite.variance(), Variance::Straight);
            assert!(homs.contains(&class.composite));
        }
    }
}
