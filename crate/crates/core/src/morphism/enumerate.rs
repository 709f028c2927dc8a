use std::sync::Arc;

use rayon::prelude::*;

use super::{Morphism, MorphismError, Structure, Variance};
use crate::group::FiniteGroup;
use crate::ring::FiniteRing;

/// Default cap on `|B|^(number of generators of A)`.
pub const DEFAULT_BOUND: u64 = 1_000_000;

/// Extends generator images to a homomorphism by breadth-first search over
/// right multiplication by generators. Returns `None` on any inconsistency.
///
/// Every element is a word in the generators, so checking every edge
/// `x -> x·g` forces `m(x·w) = m(x)·m(w)` for all words `w`.
pub(crate) fn extend_generators(
    order: usize,
    identity: usize,
    mul: impl Fn(usize, usize) -> usize,
    gens: &[usize],
    target_identity: usize,
    target_mul: impl Fn(usize, usize) -> usize,
    images: &[usize],
) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let mut map = vec![UNSET; order];
    map[identity] = target_identity;
    let mut queue = vec![identity];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (g, &img) in gens.iter().zip(images) {
            let y = mul(x, *g);
            let value = target_mul(map[x], img);
            if map[y] == UNSET {
                map[y] = value;
                queue.push(y);
            } else if map[y] != value {
                return None;
            }
        }
    }
    debug_assert!(map.iter().all(|&v| v != UNSET));
    Some(map)
}

fn candidate_count(base: usize, exponent: usize) -> u128 {
    (0..exponent).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

/// All homomorphism tables `A -> B`, in canonical (lexicographic) order.
pub(crate) fn group_maps(a: &FiniteGroup, b: &FiniteGroup, bound: u64) -> Result<Vec<Vec<usize>>, MorphismError> {
    let gens = a.generators();
    let candidates = candidate_count(b.order(), gens.len());
    if candidates > bound as u128 {
        return Err(MorphismError::BoundExceeded { candidates, bound });
    }
    if gens.is_empty() {
        return Ok(vec![vec![b.identity()]]);
    }
    // An image of g must have order dividing the order of g.
    let allowed: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let n = a.element_order(g);
            b.elements().filter(|&y| n % b.element_order(y) == 0).collect()
        })
        .collect();
    let extend = |images: &[usize]| {
        extend_generators(a.order(), a.identity(), |x, y| a.mul(x, y), &gens, b.identity(), |x, y| b.mul(x, y), images)
    };
    let mut found: Vec<Vec<usize>> = allowed[0]
        .par_iter()
        .flat_map_iter(|&first| {
            let mut out = Vec::new();
            let rest = &allowed[1..];
            let mut digits = vec![0usize; rest.len()];
            loop {
                let mut images = Vec::with_capacity(gens.len());
                images.push(first);
                images.extend(digits.iter().zip(rest).map(|(&d, choices)| choices[d]));
                if let Some(map) = extend(&images) {
                    out.push(map);
                }
                if !step(&mut digits, rest) {
                    break;
                }
            }
            out
        })
        .collect();
    found.sort_unstable();
    found.dedup();
    Ok(found)
}

fn step(digits: &mut [usize], choices: &[Vec<usize>]) -> bool {
    for (d, c) in digits.iter_mut().zip(choices) {
        *d += 1;
        if *d < c.len() {
            return true;
        }
        *d = 0;
    }
    false
}

/// All homomorphisms of the additive groups.
pub(crate) fn additive_maps(a: &FiniteRing, b: &FiniteRing, bound: u64) -> Result<Vec<Vec<usize>>, MorphismError> {
    group_maps(&a.additive_group(), &b.additive_group(), bound)
}

/// `Hom(A, B)` or `An(A, B)`, duplicate-free and canonically sorted.
pub fn enumerate<S: Structure>(
    a: &Arc<S>,
    b: &Arc<S>,
    variance: Variance,
    bound: u64,
) -> Result<Vec<Morphism<S>>, MorphismError> {
    let mut tables = match variance {
        Variance::Straight => S::straight_images(a, b, bound)?,
        Variance::Anti => S::anti_images(a, b, bound)?,
    };
    tables.sort_unstable();
    tables.dedup();
    Ok(tables.into_iter().map(|t| Morphism::from_parts(a.clone(), b.clone(), t, variance)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn small_hom_sets() {
        let z2 = corpus::z2();
        let homs = enumerate(&z2, &z2, Variance::Straight, DEFAULT_BOUND).unwrap();
        assert_eq!(homs.len(), 2);
        assert_eq!(homs[0].images(), &[0, 0]);
        assert_eq!(homs[1].images(), &[0, 1]);
    }

    #[test]
    fn end_s3_has_ten_maps_of_each_kind() {
        let s3 = corpus::s3();
        assert_eq!(enumerate(&s3, &s3, Variance::Straight, DEFAULT_BOUND).unwrap().len(), 10);
        assert_eq!(enumerate(&s3, &s3, Variance::Anti, DEFAULT_BOUND).unwrap().len(), 10);
    }

    #[test]
    fn bound_is_enforced() {
        let d4 = corpus::d4();
        let err = enumerate(&d4, &d4, Variance::Straight, 10).unwrap_err();
        assert!(matches!(err, MorphismError::BoundExceeded { candidates: 64, bound: 10 }));
    }

    #[test]
    fn ring_anti_maps_are_homs_into_opposite() {
        let t2 = corpus::t2f2();
        let anti = enumerate(&t2, &t2, Variance::Anti, DEFAULT_BOUND).unwrap();
        let op = Arc::new(t2.opposite());
        let homs = enumerate(&t2, &op, Variance::Straight, DEFAULT_BOUND).unwrap();
        let a: Vec<&[usize]> = anti.iter().map(|m| m.images()).collect();
        let h: Vec<&[usize]> = homs.iter().map(|m| m.images()).collect();
        assert_eq!(a, h);
        assert!(anti.iter().any(|m| m.images() == t2.involution().unwrap()));
    }
}
