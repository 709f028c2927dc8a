//! The bundled corpus of small groups, rings, categories and maps.
//!
//! Each structure has a constructor here and a text file under `corpus/`;
//! tests check that the two agree.

use std::sync::Arc;

use crate::category::{Additive, Arrow, FiniteCategory};
use crate::group::FiniteGroup;
use crate::morphism::{Morphism, Variance};
use crate::ring::FiniteRing;
use crate::semilinear::{FieldFq2, Matrix, SemilinearMap};

/// Bundled corpus files as `(file name, contents)`.
pub const FILES: &[(&str, &str)] = &[
    ("groups/z2.grp", include_str!("../corpus/groups/z2.grp")),
    ("groups/z3.grp", include_str!("../corpus/groups/z3.grp")),
    ("groups/z4.grp", include_str!("../corpus/groups/z4.grp")),
    ("groups/z6.grp", include_str!("../corpus/groups/z6.grp")),
    ("groups/s3.grp", include_str!("../corpus/groups/s3.grp")),
    ("groups/d4.grp", include_str!("../corpus/groups/d4.grp")),
    ("groups/q8.grp", include_str!("../corpus/groups/q8.grp")),
    ("groups/z2xz2.grp", include_str!("../corpus/groups/z2xz2.grp")),
    ("rings/z2.ring", include_str!("../corpus/rings/z2.ring")),
    ("rings/z4.ring", include_str!("../corpus/rings/z4.ring")),
    ("rings/f4.ring", include_str!("../corpus/rings/f4.ring")),
    ("rings/z2xz2.ring", include_str!("../corpus/rings/z2xz2.ring")),
    ("rings/t2f2.ring", include_str!("../corpus/rings/t2f2.ring")),
    ("rings/m2f2.ring", include_str!("../corpus/rings/m2f2.ring")),
    ("categories/arrow.cat", include_str!("../corpus/categories/arrow.cat")),
    ("categories/chain3.cat", include_str!("../corpus/categories/chain3.cat")),
    ("categories/semilattice.cat", include_str!("../corpus/categories/semilattice.cat")),
    ("categories/monoid_z2.cat", include_str!("../corpus/categories/monoid_z2.cat")),
    ("categories/field_f2.cat", include_str!("../corpus/categories/field_f2.cat")),
    ("categories/f2_zero.cat", include_str!("../corpus/categories/f2_zero.cat")),
    ("maps/signstar.map", include_str!("../corpus/maps/signstar.map")),
    ("maps/inv_s3.map", include_str!("../corpus/maps/inv_s3.map")),
    ("maps/t2_involution.map", include_str!("../corpus/maps/t2_involution.map")),
    ("semilinear/frobenius2.slm", include_str!("../corpus/semilinear/frobenius2.slm")),
    ("semilinear/rank2.slm", include_str!("../corpus/semilinear/rank2.slm")),
];

fn group(name: &str, n: usize, mul: impl Fn(usize, usize) -> usize) -> Arc<FiniteGroup> {
    let table = (0..n * n).map(|i| mul(i / n, i % n)).collect();
    Arc::new(FiniteGroup::from_flat(name.to_string(), n, table).expect("corpus group"))
}

fn ring(
    name: &str,
    n: usize,
    add: impl Fn(usize, usize) -> usize,
    mul: impl Fn(usize, usize) -> usize,
    involution: Option<Vec<usize>>,
) -> Arc<FiniteRing> {
    let a = (0..n * n).map(|i| add(i / n, i % n)).collect();
    let m = (0..n * n).map(|i| mul(i / n, i % n)).collect();
    Arc::new(FiniteRing::from_flat(name.to_string(), n, a, m, involution).expect("corpus ring"))
}

pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    group(&format!("Z{n}"), n, |x, y| (x + y) % n)
}

pub fn z2() -> Arc<FiniteGroup> {
    cyclic(2)
}

pub fn z3() -> Arc<FiniteGroup> {
    cyclic(3)
}

pub fn z4() -> Arc<FiniteGroup> {
    cyclic(4)
}

pub fn z6() -> Arc<FiniteGroup> {
    cyclic(6)
}

/// Permutations of `{0,1,2}` in the order
/// `e, (123), (132), (12), (13), (23)`, with `(στ)(x) = σ(τ(x))`.
pub const S3_PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [2, 1, 0], [0, 2, 1]];

pub fn s3() -> Arc<FiniteGroup> {
    let p = S3_PERMUTATIONS;
    group("S3", 6, |x, y| {
        let composed = [p[x][p[y][0]], p[x][p[y][1]], p[x][p[y][2]]];
        p.iter().position(|q| *q == composed).expect("closed")
    })
}

/// `r^k s^j` has index `k + 4j`.
pub fn d4() -> Arc<FiniteGroup> {
    group("D4", 8, |x, y| {
        let (a, b) = (x % 4, x / 4);
        let (c, d) = (y % 4, y / 4);
        let k = if b == 0 { a + c } else { a + 4 - c };
        k % 4 + 4 * ((b + d) % 2)
    })
}

/// `1, -1, i, -i, j, -j, k, -k`.
pub fn q8() -> Arc<FiniteGroup> {
    // unit products: (sign flip, unit) for units 1, i, j, k
    const UNITS: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    group("Q8", 8, |x, y| {
        let (u, s) = (x / 2, x % 2);
        let (v, t) = (y / 2, y % 2);
        let (flip, w) = UNITS[u][v];
        2 * w + (s + t + flip) % 2
    })
}

pub fn z2xz2() -> Arc<FiniteGroup> {
    let (g, _, _) = FiniteGroup::direct_product(&z2(), &z2());
    Arc::new((*g).clone().with_name("Z2xZ2"))
}

pub fn groups() -> Vec<Arc<FiniteGroup>> {
    vec![z2(), z3(), z4(), z6(), s3(), d4(), q8(), z2xz2()]
}

/// `Z/n` with the identity as involution.
pub fn cyclic_ring(n: usize) -> Arc<FiniteRing> {
    ring(&format!("Z{n}"), n, |x, y| (x + y) % n, |x, y| x * y % n, Some((0..n).collect()))
}

pub fn z2_ring() -> Arc<FiniteRing> {
    cyclic_ring(2)
}

pub fn z4_ring() -> Arc<FiniteRing> {
    cyclic_ring(4)
}

/// `a + b t` with `t^2 = t + 1` has index `a + 2b`; the involution is
/// the Frobenius `x ↦ x^2`.
pub fn f4() -> Arc<FiniteRing> {
    ring(
        "F4",
        4,
        |x, y| x ^ y,
        |x, y| {
            let (a, b) = (x & 1, x >> 1);
            let (c, d) = (y & 1, y >> 1);
            let constant = (a & c) ^ (b & d);
            let linear = (a & d) ^ (b & c) ^ (b & d);
            constant | linear << 1
        },
        Some(vec![0, 1, 3, 2]),
    )
}

pub fn z2xz2_ring() -> Arc<FiniteRing> {
    Arc::new(FiniteRing::direct_product(&z2_ring(), &z2_ring()).with_name("Z2xZ2"))
}

/// Upper-triangular `[[a, b], [0, c]]` over F2 at index `a + 2b + 4c`, with
/// the involution `[[a, b], [0, c]] ↦ [[c, b], [0, a]]`.
pub fn t2f2() -> Arc<FiniteRing> {
    let split = |x: usize| (x & 1, (x >> 1) & 1, (x >> 2) & 1);
    let join = |a: usize, b: usize, c: usize| a | b << 1 | c << 2;
    let involution = (0..8).map(|x| {
        let (a, b, c) = split(x);
        join(c, b, a)
    });
    ring(
        "T2F2",
        8,
        |x, y| x ^ y,
        |x, y| {
            let (a, b, c) = split(x);
            let (d, e, f) = split(y);
            join(a & d, (a & e) ^ (b & f), c & f)
        },
        Some(involution.collect()),
    )
}

/// `[[a, b], [c, d]]` over F2 at index `a + 2b + 4c + 8d`; no involution.
pub fn m2f2() -> Arc<FiniteRing> {
    let split = |x: usize| [[x & 1, (x >> 1) & 1], [(x >> 2) & 1, (x >> 3) & 1]];
    ring(
        "M2F2",
        16,
        |x, y| x ^ y,
        |x, y| {
            let (p, q) = (split(x), split(y));
            let e = |i: usize, j: usize| (p[i][0] & q[0][j]) ^ (p[i][1] & q[1][j]);
            e(0, 0) | e(0, 1) << 1 | e(1, 0) << 2 | e(1, 1) << 3
        },
        None,
    )
}

pub fn rings() -> Vec<Arc<FiniteRing>> {
    vec![z2_ring(), z4_ring(), f4(), z2xz2_ring(), t2f2(), m2f2()]
}

/// A thin category on `objects` with an arrow `xy` for every listed pair
/// `x ≤ y`; the order must already be transitive.
fn poset(name: &str, objects: &[&str], order: &[(usize, usize)]) -> FiniteCategory {
    let mut arrows: Vec<Arrow> = objects.iter().enumerate().map(|(i, o)| Arrow::new(format!("1_{o}"), i, i)).collect();
    arrows.extend(order.iter().map(|&(x, y)| Arrow::new(format!("{}{}", objects[x], objects[y]), x, y)));
    let lookup = arrows.clone();
    let find = move |x: usize, y: usize| lookup.iter().position(|a| a.source == x && a.target == y).expect("transitive order");
    let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.source, a.target)).collect();
    FiniteCategory::from_fn(
        name,
        objects.iter().map(|o| o.to_string()).collect(),
        arrows,
        (0..objects.len()).collect(),
        |g, f| find(ends[f].0, ends[g].1),
    )
    .expect("corpus poset")
}

/// The arrow category `a → b`.
pub fn arrow_category() -> FiniteCategory {
    poset("arrow", &["a", "b"], &[(0, 1)])
}

/// The chain `a ≤ b ≤ c`.
pub fn chain3() -> FiniteCategory {
    poset("chain3", &["a", "b", "c"], &[(0, 1), (1, 2), (0, 2)])
}

/// The meet-semilattice `m ≤ x`, `m ≤ y`, with `x ∧ y = m`.
pub fn semilattice() -> FiniteCategory {
    poset("semilattice", &["m", "x", "y"], &[(0, 1), (0, 2)])
}

/// `Z/2` as a one-object category.
pub fn monoid_z2() -> FiniteCategory {
    let arrows = vec![Arrow::new("1", 0, 0), Arrow::new("s", 0, 0)];
    FiniteCategory::from_fn("monoid_z2", vec!["o".into()], arrows, vec![0], |g, f| g ^ f).expect("corpus monoid")
}

/// `F_2` as a one-object preadditive category.
pub fn field_f2() -> FiniteCategory {
    let arrows = vec![Arrow::new("0", 0, 0), Arrow::new("1", 0, 0)];
    FiniteCategory::from_fn("field_f2", vec!["v".into()], arrows, vec![1], |g, f| g & f)
        .and_then(|c| c.with_additive(Additive { add: vec![0, 1, 1, 0], zero: vec![0] }))
        .expect("corpus field")
}

/// `F_2` together with a zero object `z`.
pub fn f2_zero() -> FiniteCategory {
    let arrows = vec![
        Arrow::new("0_v", 0, 0),
        Arrow::new("1_v", 0, 0),
        Arrow::new("1_z", 1, 1),
        Arrow::new("0_vz", 0, 1),
        Arrow::new("0_zv", 1, 0),
    ];
    let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.source, a.target)).collect();
    let c = FiniteCategory::from_fn("f2_zero", vec!["v".into(), "z".into()], arrows, vec![1, 2], |g, f| {
        match (ends[f].0, ends[g].1) {
            (0, 0) if g == 1 && f == 1 => 1,
            (0, 0) => 0,
            (1, 1) => 2,
            (0, 1) => 3,
            _ => 4,
        }
    })
    .expect("corpus f2_zero");
    let m = 5;
    let mut add = vec![crate::category::NONE; m * m];
    for f in 0..m {
        for g in 0..m {
            if ends[f] == ends[g] {
                add[f * m + g] = match (f, g) {
                    (0, x) | (x, 0) => x,
                    (1, 1) => 0,
                    _ => f,
                };
            }
        }
    }
    c.with_additive(Additive { add, zero: vec![0, 3, 4, 2] }).expect("corpus f2_zero additive")
}

pub fn categories() -> Vec<FiniteCategory> {
    vec![arrow_category(), chain3(), semilattice(), monoid_z2(), field_f2(), f2_zero()]
}

/// The sign of a permutation, as an anti map `S3 → Z2`.
pub fn signstar() -> Morphism<FiniteGroup> {
    Morphism::new(s3(), z2(), vec![0, 0, 0, 1, 1, 1], Variance::Anti).expect("corpus map")
}

/// Inversion on `S3`.
pub fn inv_s3() -> Morphism<FiniteGroup> {
    let g = s3();
    let images = g.elements().map(|x| g.inverse(x)).collect();
    Morphism::new(g.clone(), g, images, Variance::Anti).expect("corpus map")
}

/// The involution of `T2(F2)` as an anti-automorphism.
pub fn t2_involution() -> Morphism<FiniteRing> {
    let r = t2f2();
    let images = r.involution().expect("involution").to_vec();
    Morphism::new(r.clone(), r, images, Variance::Anti).expect("corpus map")
}

/// `1*` on `F4²`.
pub fn frobenius2() -> SemilinearMap {
    SemilinearMap::reverse(&Arc::new(FieldFq2::f4()), 2)
}

/// An anti map `F4³ → F4³` of rank 2.
pub fn rank2() -> SemilinearMap {
    let rows = vec![vec![1, 2, 0], vec![0, 1, 3], vec![1, 3, 3]];
    SemilinearMap::new(Arc::new(FieldFq2::f4()), Matrix::from_rows(3, 3, &rows), Variance::Anti).expect("corpus map")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_orders() {
        let orders: Vec<usize> = groups().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![2, 3, 4, 6, 6, 8, 8, 4]);
        let orders: Vec<usize> = rings().iter().map(|r| r.order()).collect();
        assert_eq!(orders, vec![2, 4, 4, 4, 8, 16]);
    }

    #[test]
    fn q8_and_d4_differ() {
        let q = q8();
        let d = d4();
        let involutions = |g: &FiniteGroup| g.elements().filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions(&q), 1);
        assert_eq!(involutions(&d), 5);
        assert!(!q.is_abelian() && !d.is_abelian());
    }

    #[test]
    fn f4_is_a_field() {
        let f = f4();
        for x in 1..4 {
            assert!((1..4).any(|y| f.mul(x, y) == f.one()));
        }
    }
}
