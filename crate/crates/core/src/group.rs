//! Finite groups stored as validated Cayley tables.
//!
//! Elements are the dense indices `0..order`. The identity is discovered
//! during validation, so index 0 need not be the identity.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::morphism::{Morphism, Variance};

/// Largest order for which [`FiniteGroup::find_isomorphism`] searches.
pub const ISOMORPHISM_SEARCH_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is outside 0..{order}")]
    NotClosed { row: usize, col: usize, value: usize, order: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("associativity fails for ({x}, {y}, {z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("element {element} has no inverse")]
    MissingInverse { element: usize },
    #[error("element {element} is outside the group")]
    OutOfRange { element: usize },
    #[error("subset is not normal: {conjugator} * {element} * {conjugator}^-1 leaves it")]
    NotNormal { element: usize, conjugator: usize },
    #[error("subset is not a subgroup: {x} * {y} leaves it")]
    NotSubgroup { x: usize, y: usize },
    #[error("product set is not closed: {x} * {y} leaves it")]
    ClosureViolation { x: usize, y: usize },
    #[error("isomorphism search refused for orders {left} and {right} (limit {limit})")]
    SearchBound { left: usize, right: usize, limit: usize },
}

/// A validated finite group.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

/// Equality compares the multiplication tables only; names are labels.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a Cayley table, `rows[i][j] = i * j`.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        let mut table = Vec::with_capacity(order * order);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::NotSquare { row, len: entries.len(), expected: order });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::NotClosed { row, col, value, order });
                }
            }
            table.extend_from_slice(entries);
        }
        Self::from_flat(name.into(), order, table)
    }

    pub(crate) fn from_flat(name: String, order: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        let at = |x: usize, y: usize| table[x * order + y];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        for x in 0..order {
            for y in 0..order {
                let xy = at(x, y);
                for z in 0..order {
                    if at(xy, z) != at(x, at(y, z)) {
                        return Err(GroupError::NotAssociative { x, y, z });
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(order);
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or(GroupError::MissingInverse { element: x })?;
            inverses.push(inv);
        }
        Ok(Self { name, order, table, identity, inverses })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    #[inline]
    pub fn inverse(&self, x: usize) -> usize {
        self.inverses[x]
    }

    pub fn pow(&self, x: usize, n: i64) -> usize {
        let base = if n < 0 { self.inverse(x) } else { x };
        (0..n.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    /// Least `n > 0` with `x^n = 1`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut n = 1;
        while acc != self.identity {
            acc = self.mul(acc, x);
            n += 1;
        }
        n
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).map(|x| self.element_order(x)).fold(1, lcm)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        self.non_commuting_pair().is_none()
    }

    /// First pair `(x, y)` with `xy != yx`.
    pub fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        (0..self.order)
            .flat_map(|x| (x + 1..self.order).map(move |y| (x, y)))
            .find(|&(x, y)| self.mul(x, y) != self.mul(y, x))
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Result<Subgroup, GroupError> {
        if let Some(&element) = gens.iter().find(|&&g| g >= self.order) {
            return Err(GroupError::OutOfRange { element });
        }
        let mut members = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Ok(Subgroup { members: members.into_iter().collect() })
    }

    /// Checks that `members` is a subgroup and wraps it.
    pub fn subgroup(&self, members: &[usize]) -> Result<Subgroup, GroupError> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        if let Some(&element) = set.iter().find(|&&x| x >= self.order) {
            return Err(GroupError::OutOfRange { element });
        }
        if !set.contains(&self.identity) {
            return Err(GroupError::NotSubgroup { x: self.identity, y: self.identity });
        }
        for &x in &set {
            if !set.contains(&self.inverse(x)) {
                return Err(GroupError::NotSubgroup { x, y: self.identity });
            }
            for &y in &set {
                if !set.contains(&self.mul(x, y)) {
                    return Err(GroupError::NotSubgroup { x, y });
                }
            }
        }
        Ok(Subgroup { members: set.into_iter().collect() })
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![self.identity] }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { members: (0..self.order).collect() }
    }

    /// `None` when normal, otherwise a member and a conjugator moving it out.
    pub fn normality_witness(&self, sub: &Subgroup) -> Option<(usize, usize)> {
        for g in 0..self.order {
            let g_inv = self.inverse(g);
            for &n in sub.members() {
                if !sub.contains(self.mul(self.mul(g, n), g_inv)) {
                    return Some((n, g));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        self.normality_witness(sub).is_none()
    }

    /// Greedy generating set: scan elements in index order, keep those not
    /// yet in the span of the previously kept ones.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.trivial_subgroup();
        for x in 0..self.order {
            if !span.contains(x) {
                gens.push(x);
                span = self.subgroup_closure(&gens).expect("indices in range");
            }
        }
        gens
    }

    /// All normal subgroups, ordered by size and then by members.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        // Every subgroup of a group of order <= 16 is generated by at most
        // four elements, but pairs already cover the corpus; use closure of
        // all subsets of size <= 2 and then close under joins.
        let mut subs: Vec<Subgroup> = Vec::new();
        for x in 0..self.order {
            for y in x..self.order {
                let s = self.subgroup_closure(&[x, y]).expect("in range");
                if found.insert(s.members.clone()) {
                    subs.push(s);
                }
            }
        }
        let mut i = 0;
        while i < subs.len() {
            for j in 0..subs.len() {
                let mut gens = subs[i].members.clone();
                gens.extend_from_slice(&subs[j].members);
                let s = self.subgroup_closure(&gens).expect("in range");
                if found.insert(s.members.clone()) {
                    subs.push(s);
                }
            }
            i += 1;
        }
        let mut normal: Vec<Subgroup> = subs.into_iter().filter(|s| self.is_normal(s)).collect();
        normal.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
        normal
    }

    /// Componentwise product. Element `(g, h)` has index `g * |H| + h`.
    pub fn direct_product(
        left: &Arc<FiniteGroup>,
        right: &Arc<FiniteGroup>,
    ) -> (Arc<FiniteGroup>, Morphism<FiniteGroup>, Morphism<FiniteGroup>) {
        let (n, m) = (left.order, right.order);
        let mut table = Vec::with_capacity(n * n * m * m);
        for a in 0..n * m {
            for b in 0..n * m {
                let g = left.mul(a / m, b / m);
                let h = right.mul(a % m, b % m);
                table.push(g * m + h);
            }
        }
        let name = format!("{}x{}", left.name, right.name);
        let product = Arc::new(
            FiniteGroup::from_flat(name, n * m, table).expect("product of groups is a group"),
        );
        let p1 = Morphism::from_parts(
            product.clone(),
            left.clone(),
            (0..n * m).map(|x| x / m).collect(),
            Variance::Straight,
        );
        let p2 = Morphism::from_parts(
            product.clone(),
            right.clone(),
            (0..n * m).map(|x| x % m).collect(),
            Variance::Straight,
        );
        (product, p1, p2)
    }

    /// `A N` for a subgroup `A` and a normal subgroup `N`.
    pub fn subgroup_product(&self, a: &Subgroup, n: &Subgroup) -> Result<Subgroup, GroupError> {
        if let Some((element, conjugator)) = self.normality_witness(n) {
            return Err(GroupError::NotNormal { element, conjugator });
        }
        let set: BTreeSet<usize> = a
            .members()
            .iter()
            .flat_map(|&x| n.members().iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.mul(x, y))
            .collect();
        for &x in &set {
            for &y in &set {
                if !set.contains(&self.mul(x, y)) {
                    return Err(GroupError::ClosureViolation { x, y });
                }
            }
        }
        Ok(Subgroup { members: set.into_iter().collect() })
    }

    /// Left cosets `xN` in canonical order: each coset is labelled by its
    /// least member and cosets are sorted by that label.
    pub fn cosets(&self, sub: &Subgroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut cosets = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            let mut coset: Vec<usize> = sub.members().iter().map(|&n| self.mul(x, n)).collect();
            coset.sort_unstable();
            for &y in &coset {
                seen[y] = true;
            }
            cosets.push(coset);
        }
        cosets
    }

    /// `G/N` together with the natural projection.
    pub fn quotient(
        self: &Arc<Self>,
        normal: &Subgroup,
    ) -> Result<(Arc<FiniteGroup>, Morphism<FiniteGroup>), GroupError> {
        if let Some((element, conjugator)) = self.normality_witness(normal) {
            return Err(GroupError::NotNormal { element, conjugator });
        }
        let cosets = self.cosets(normal);
        let mut label = vec![0; self.order];
        for (i, coset) in cosets.iter().enumerate() {
            for &x in coset {
                label[x] = i;
            }
        }
        let k = cosets.len();
        let mut table = Vec::with_capacity(k * k);
        for a in &cosets {
            for b in &cosets {
                table.push(label[self.mul(a[0], b[0])]);
            }
        }
        let name = format!("{}/{}", self.name, normal.len());
        let quotient = Arc::new(FiniteGroup::from_flat(name, k, table).expect("quotient by normal subgroup"));
        let projection = Morphism::from_parts(self.clone(), quotient.clone(), label, Variance::Straight);
        Ok((quotient, projection))
    }

    /// The subgroup as a group in its own right, with the inclusion map.
    /// Members are relabelled `0..|S|` in increasing order.
    pub fn restrict(
        self: &Arc<Self>,
        sub: &Subgroup,
    ) -> (Arc<FiniteGroup>, Morphism<FiniteGroup>) {
        let members = sub.members();
        let local = |x: usize| members.binary_search(&x).expect("closed subgroup");
        let k = members.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in members {
            for &b in members {
                table.push(local(self.mul(a, b)));
            }
        }
        let name = format!("{}<{}>", self.name, k);
        let group = Arc::new(FiniteGroup::from_flat(name, k, table).expect("subgroup is a group"));
        let inclusion = Morphism::from_parts(group.clone(), self.clone(), members.to_vec(), Variance::Straight);
        (group, inclusion)
    }

    /// Exhaustive isomorphism search over generator images. Refuses above
    /// [`ISOMORPHISM_SEARCH_LIMIT`].
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Result<Option<Vec<usize>>, GroupError> {
        let limit = ISOMORPHISM_SEARCH_LIMIT;
        if self.order > limit || other.order > limit {
            return Err(GroupError::SearchBound { left: self.order, right: other.order, limit });
        }
        if self.order != other.order {
            return Ok(None);
        }
        let gens = self.generators();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice.clone();
            if let Some(map) = crate::morphism::extend_generators(
                self.order,
                self.identity,
                |x, y| self.mul(x, y),
                &gens,
                other.identity,
                |x, y| other.mul(x, y),
                &images,
            ) {
                let mut hit = vec![false; other.order];
                if map.iter().all(|&y| !std::mem::replace(&mut hit[y], true)) {
                    return Ok(Some(map));
                }
            }
            if !advance(&mut choice, other.order) {
                return Ok(None);
            }
        }
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> Result<bool, GroupError> {
        Ok(self.find_isomorphism(other)?.is_some())
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

/// A subgroup, stored as the sorted list of its members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { members: self.members.iter().copied().filter(|&x| other.contains(x)).collect() }
    }
}

/// Odometer step over `0..base` digits; false once it wraps around.
pub(crate) fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
