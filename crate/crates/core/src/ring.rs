//! Finite unital rings with an optional involution.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::group::FiniteGroup;
use crate::morphism::{Morphism, Variance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("empty table")]
    Empty,
    #[error("{table} table row {row} has {len} entries, expected {expected}")]
    NotSquare { table: &'static str, row: usize, len: usize, expected: usize },
    #[error("{table} table entry {value} at ({row}, {col}) is out of range")]
    NotClosed { table: &'static str, row: usize, col: usize, value: usize },
    #[error("addition is not an abelian group: {reason}")]
    AddNotAbelianGroup { reason: String },
    #[error("multiplication is not a monoid: {reason}")]
    MulNotMonoid { reason: String },
    #[error("{side} distributivity fails for ({x}, {y}, {z})")]
    NotDistributive { side: &'static str, x: usize, y: usize, z: usize },
    #[error("bad involution: {reason} at ({x}, {y})")]
    BadInvolution { reason: &'static str, x: usize, y: usize },
    #[error("not a {side} ideal: {x} and {r} give an element outside")]
    NotIdeal { side: Side, x: usize, r: usize },
    #[error("not a subring: {x} and {y} give an element outside")]
    NotSubring { x: usize, y: usize },
    #[error("element {element} is outside the ring")]
    OutOfRange { element: usize },
}

/// Which side(s) an ideal absorbs multiplication on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "two-sided",
        })
    }
}

/// A validated finite ring with identity.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    name: String,
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
    neg: Vec<usize>,
    involution: Option<Vec<usize>>,
}

/// Equality compares tables and involution; names are labels.
impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.add == other.add
            && self.mul == other.mul
            && self.involution == other.involution
    }
}

impl Eq for FiniteRing {}

fn flatten(table: &'static str, rows: &[Vec<usize>], n: usize) -> Result<Vec<usize>, RingError> {
    if rows.len() != n {
        return Err(RingError::NotSquare { table, row: rows.len(), len: 0, expected: n });
    }
    let mut flat = Vec::with_capacity(n * n);
    for (row, entries) in rows.iter().enumerate() {
        if entries.len() != n {
            return Err(RingError::NotSquare { table, row, len: entries.len(), expected: n });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value >= n {
                return Err(RingError::NotClosed { table, row, col, value });
            }
        }
        flat.extend_from_slice(entries);
    }
    Ok(flat)
}

impl FiniteRing {
    pub fn from_tables(
        name: impl Into<String>,
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
        involution: Option<Vec<usize>>,
    ) -> Result<Self, RingError> {
        let n = add.len();
        if n == 0 {
            return Err(RingError::Empty);
        }
        let add = flatten("add", add, n)?;
        let mul = flatten("mul", mul, n)?;
        Self::from_flat(name.into(), n, add, mul, involution)
    }

    pub(crate) fn from_flat(
        name: String,
        n: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        involution: Option<Vec<usize>>,
    ) -> Result<Self, RingError> {
        let additive = FiniteGroup::from_flat(name.clone(), n, add.clone())
            .map_err(|e| RingError::AddNotAbelianGroup { reason: e.to_string() })?;
        if let Some((x, y)) = additive.non_commuting_pair() {
            return Err(RingError::AddNotAbelianGroup { reason: format!("{x} + {y} != {y} + {x}") });
        }
        let zero = additive.identity();
        let neg: Vec<usize> = (0..n).map(|x| additive.inverse(x)).collect();
        let m = |x: usize, y: usize| mul[x * n + y];
        let a = |x: usize, y: usize| add[x * n + y];
        for x in 0..n {
            for y in 0..n {
                let xy = m(x, y);
                for z in 0..n {
                    if m(xy, z) != m(x, m(y, z)) {
                        return Err(RingError::MulNotMonoid {
                            reason: format!("associativity fails for ({x}, {y}, {z})"),
                        });
                    }
                }
            }
        }
        let one = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or_else(|| RingError::MulNotMonoid { reason: "no multiplicative identity".into() })?;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if m(x, a(y, z)) != a(m(x, y), m(x, z)) {
                        return Err(RingError::NotDistributive { side: "left", x, y, z });
                    }
                    if m(a(y, z), x) != a(m(y, x), m(z, x)) {
                        return Err(RingError::NotDistributive { side: "right", x, y, z });
                    }
                }
            }
        }
        if let Some(s) = &involution {
            check_involution(n, &add, &mul, one, s)?;
        }
        Ok(Self { name, order: n, add, mul, zero, one, neg, involution })
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

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.order + y]
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn involution(&self) -> Option<&[usize]> {
        self.involution.as_deref()
    }

    pub fn add_rows(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// The additive group, named after the ring.
    pub fn additive_group(&self) -> FiniteGroup {
        FiniteGroup::from_flat(self.name.clone(), self.order, self.add.clone()).expect("validated")
    }

    pub fn is_commutative(&self) -> bool {
        self.non_commuting_pair().is_none()
    }

    pub fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        (0..self.order)
            .flat_map(|x| (x + 1..self.order).map(move |y| (x, y)))
            .find(|&(x, y)| self.mul(x, y) != self.mul(y, x))
    }

    /// Same addition, `x ·op y = y · x`, involution dropped.
    pub fn opposite(&self) -> FiniteRing {
        let n = self.order;
        let mul = (0..n * n).map(|i| self.mul(i % n, i / n)).collect();
        FiniteRing {
            name: format!("{}^op", self.name),
            order: n,
            add: self.add.clone(),
            mul,
            zero: self.zero,
            one: self.one,
            neg: self.neg.clone(),
            involution: None,
        }
    }

    /// Componentwise product; `(r, s)` has index `r * |S| + s`.
    pub fn direct_product(left: &FiniteRing, right: &FiniteRing) -> FiniteRing {
        let (n, m) = (left.order, right.order);
        let mut add = Vec::with_capacity(n * n * m * m);
        let mut mul = Vec::with_capacity(n * n * m * m);
        for a in 0..n * m {
            for b in 0..n * m {
                add.push(left.add(a / m, b / m) * m + right.add(a % m, b % m));
                mul.push(left.mul(a / m, b / m) * m + right.mul(a % m, b % m));
            }
        }
        let involution = match (&left.involution, &right.involution) {
            (Some(s), Some(t)) => Some((0..n * m).map(|a| s[a / m] * m + t[a % m]).collect()),
            _ => None,
        };
        let name = format!("{}x{}", left.name, right.name);
        FiniteRing::from_flat(name, n * m, add, mul, involution).expect("product of rings is a ring")
    }

    fn check_members(&self, members: &[usize]) -> Result<BTreeSet<usize>, RingError> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        match set.iter().find(|&&x| x >= self.order) {
            Some(&element) => Err(RingError::OutOfRange { element }),
            None => Ok(set),
        }
    }

    fn additive_subgroup_witness(&self, set: &BTreeSet<usize>) -> Option<(usize, usize)> {
        if !set.contains(&self.zero) {
            return Some((self.zero, self.zero));
        }
        for &x in set {
            for &y in set {
                if !set.contains(&self.add(x, y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// First `(x, r)` breaking the ideal property on `side`, if any.
    pub fn ideal_witness(&self, members: &[usize], side: Side) -> Result<Option<(usize, usize)>, RingError> {
        let set = self.check_members(members)?;
        if let Some(w) = self.additive_subgroup_witness(&set) {
            return Ok(Some(w));
        }
        for &x in &set {
            for r in 0..self.order {
                let left_ok = set.contains(&self.mul(r, x));
                let right_ok = set.contains(&self.mul(x, r));
                let ok = match side {
                    Side::Left => left_ok,
                    Side::Right => right_ok,
                    Side::TwoSided => left_ok && right_ok,
                };
                if !ok {
                    return Ok(Some((x, r)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_ideal(&self, members: &[usize], side: Side) -> bool {
        matches!(self.ideal_witness(members, side), Ok(None))
    }

    pub fn ideal(&self, members: &[usize], side: Side) -> Result<RingIdeal, RingError> {
        match self.ideal_witness(members, side)? {
            Some((x, r)) => Err(RingError::NotIdeal { side, x, r }),
            None => Ok(RingIdeal { members: self.check_members(members)?.into_iter().collect(), side }),
        }
    }

    pub fn zero_ideal(&self) -> RingIdeal {
        RingIdeal { members: vec![self.zero], side: Side::TwoSided }
    }

    pub fn whole_ideal(&self) -> RingIdeal {
        RingIdeal { members: (0..self.order).collect(), side: Side::TwoSided }
    }

    /// First pair leaving `members`, if it is not a subring.
    pub fn subring_witness(&self, members: &[usize]) -> Result<Option<(usize, usize)>, RingError> {
        let set = self.check_members(members)?;
        if !set.contains(&self.one) {
            return Ok(Some((self.one, self.one)));
        }
        if let Some(w) = self.additive_subgroup_witness(&set) {
            return Ok(Some(w));
        }
        for &x in &set {
            for &y in &set {
                if !set.contains(&self.mul(x, y)) {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_subring(&self, members: &[usize]) -> bool {
        matches!(self.subring_witness(members), Ok(None))
    }

    /// All additive subgroups, sorted by size then members.
    pub fn additive_subgroups(&self) -> Vec<Vec<usize>> {
        let g = self.additive_group();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.order {
            let s = g.subgroup_closure(&[x]).expect("in range").members().to_vec();
            if found.insert(s.clone()) {
                queue.push(s);
            }
        }
        let mut i = 0;
        while i < queue.len() {
            for j in 0..i {
                let mut gens = queue[i].clone();
                gens.extend_from_slice(&queue[j]);
                let s = g.subgroup_closure(&gens).expect("in range").members().to_vec();
                if found.insert(s.clone()) {
                    queue.push(s);
                }
            }
            i += 1;
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    pub fn ideals(&self, side: Side) -> Vec<RingIdeal> {
        self.additive_subgroups()
            .into_iter()
            .filter(|s| self.is_ideal(s, side))
            .map(|members| RingIdeal { members, side })
            .collect()
    }

    pub fn subrings(&self) -> Vec<Vec<usize>> {
        self.additive_subgroups().into_iter().filter(|s| self.is_subring(s)).collect()
    }

    /// Additive cosets `x + I`, labelled by least member, sorted by label.
    pub fn cosets(&self, ideal: &RingIdeal) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            let mut coset: Vec<usize> = ideal.members.iter().map(|&i| self.add(x, i)).collect();
            coset.sort_unstable();
            for &y in &coset {
                seen[y] = true;
            }
            out.push(coset);
        }
        out
    }

    /// `R/I` with the projection. The involution descends when `σ(I) ⊆ I`.
    pub fn quotient_ring(
        self: &Arc<Self>,
        ideal: &RingIdeal,
    ) -> Result<(Arc<FiniteRing>, Morphism<FiniteRing>), RingError> {
        if let Some((x, r)) = self.ideal_witness(&ideal.members, Side::TwoSided)? {
            return Err(RingError::NotIdeal { side: Side::TwoSided, x, r });
        }
        let cosets = self.cosets(ideal);
        let mut label = vec![0; self.order];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                label[x] = i;
            }
        }
        let k = cosets.len();
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for a in &cosets {
            for b in &cosets {
                add.push(label[self.add(a[0], b[0])]);
                mul.push(label[self.mul(a[0], b[0])]);
            }
        }
        let involution = self.involution.as_ref().and_then(|s| {
            ideal.members.iter().all(|&x| ideal.contains(s[x])).then(|| cosets.iter().map(|c| label[s[c[0]]]).collect())
        });
        let name = format!("{}/{}", self.name, ideal.len());
        let q = Arc::new(FiniteRing::from_flat(name, k, add, mul, involution).expect("quotient by ideal"));
        let pi = Morphism::from_parts(self.clone(), q.clone(), label, Variance::Straight);
        Ok((q, pi))
    }

    /// A subring as a ring, with its inclusion. Members are relabelled in
    /// increasing order; the involution is kept if the subring is stable.
    pub fn restrict(
        self: &Arc<Self>,
        members: &[usize],
    ) -> Result<(Arc<FiniteRing>, Morphism<FiniteRing>), RingError> {
        if let Some((x, y)) = self.subring_witness(members)? {
            return Err(RingError::NotSubring { x, y });
        }
        let members: Vec<usize> = self.check_members(members)?.into_iter().collect();
        let local = |x: usize| members.binary_search(&x).expect("closed subring");
        let k = members.len();
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for &a in &members {
            for &b in &members {
                add.push(local(self.add(a, b)));
                mul.push(local(self.mul(a, b)));
            }
        }
        let involution = self.involution.as_ref().and_then(|s| {
            members
                .iter()
                .all(|x| members.binary_search(&s[*x]).is_ok())
                .then(|| members.iter().map(|&x| local(s[x])).collect())
        });
        let name = format!("{}<{}>", self.name, k);
        let sub = Arc::new(FiniteRing::from_flat(name, k, add, mul, involution).expect("subring is a ring"));
        let incl = Morphism::from_parts(sub.clone(), self.clone(), members, Variance::Straight);
        Ok((sub, incl))
    }
}

fn check_involution(n: usize, add: &[usize], mul: &[usize], one: usize, s: &[usize]) -> Result<(), RingError> {
    if s.len() != n {
        return Err(RingError::BadInvolution { reason: "wrong length", x: s.len(), y: n });
    }
    if let Some(x) = s.iter().position(|&v| v >= n) {
        return Err(RingError::BadInvolution { reason: "image out of range", x, y: s[x] });
    }
    for x in 0..n {
        if s[s[x]] != x {
            return Err(RingError::BadInvolution { reason: "not self-inverse", x, y: s[x] });
        }
    }
    if s[one] != one {
        return Err(RingError::BadInvolution { reason: "does not fix the identity", x: one, y: s[one] });
    }
    for x in 0..n {
        for y in 0..n {
            if s[add[x * n + y]] != add[s[x] * n + s[y]] {
                return Err(RingError::BadInvolution { reason: "not additive", x, y });
            }
            if s[mul[x * n + y]] != mul[s[y] * n + s[x]] {
                return Err(RingError::BadInvolution { reason: "does not reverse products", x, y });
            }
        }
    }
    Ok(())
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

/// An ideal, stored as sorted members plus its side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingIdeal {
    members: Vec<usize>,
    side: Side,
}

impl RingIdeal {
    pub(crate) fn from_sorted(members: Vec<usize>, side: Side) -> Self {
        Self { members, side }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn side(&self) -> Side {
        self.side
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
}
