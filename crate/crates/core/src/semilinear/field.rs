use std::fmt;

use super::SemilinearError;

/// A field element, as an index `a + p·b` standing for `a + b t`.
pub type Elem = u8;

/// `F_{q²}` with `q = p` prime, as `F_p[t]/(t² - αt - β)`.
///
/// Element `a + b t` has index `a + p·b`, so `F_p` sits at `0..p`. The
/// Frobenius is `x ↦ x^p`.
#[derive(Debug, Clone)]
pub struct FieldFq2 {
    p: usize,
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    frob: Vec<Elem>,
}

impl PartialEq for FieldFq2 {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.mul == other.mul
    }
}

impl Eq for FieldFq2 {}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl FieldFq2 {
    /// Builds `F_{p²}` for a prime `p ≤ 13` and checks every field axiom.
    pub fn new(p: usize) -> Result<Self, SemilinearError> {
        if !is_prime(p) || p > 13 {
            return Err(SemilinearError::UnsupportedField(format!("p = {p}")));
        }
        // first (α, β) with x² - αx - β free of roots in F_p
        let (alpha, beta) = (0..p)
            .flat_map(|a| (0..p).map(move |b| (a, b)))
            .find(|&(a, b)| (0..p).all(|x| (x * x + p * p - a * x - b) % p != 0))
            .expect("an irreducible quadratic exists");
        let size = p * p;
        let split = |x: usize| (x % p, x / p);
        let join = |a: usize, b: usize| (a % p + p * (b % p)) as Elem;
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                let ((a, b), (c, d)) = (split(x), split(y));
                add[x * size + y] = join(a + c, b + d);
                let bd = b * d;
                mul[x * size + y] = join(a * c + bd * beta, a * d + b * c + bd * alpha);
            }
        }
        let neg = (0..size).map(|x| join(p - x % p, p - x / p)).collect();
        let inv = (0..size)
            .map(|x| if x == 0 { 0 } else { (1..size).find(|&y| mul[x * size + y] == 1).unwrap_or(0) as Elem })
            .collect();
        let frob = (0..size)
            .map(|x| (1..p).fold(x as Elem, |acc, _| mul[acc as usize * size + x]))
            .collect();
        let field = Self { p, size, add, mul, neg, inv, frob };
        field.check_axioms().map_err(SemilinearError::UnsupportedField)?;
        Ok(field)
    }

    pub fn f4() -> Self {
        Self::new(2).expect("F4")
    }

    pub fn f9() -> Self {
        Self::new(3).expect("F9")
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn name(&self) -> String {
        format!("F{}", self.size)
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x as usize * self.size + y as usize]
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x as usize * self.size + y as usize]
    }

    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x as usize]
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    /// Multiplicative inverse; `inv(0) = 0`.
    pub fn inv(&self, x: Elem) -> Elem {
        self.inv[x as usize]
    }

    pub fn frob(&self, x: Elem) -> Elem {
        self.frob[x as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size as Elem
    }

    /// Exhaustive check of the field axioms and of the Frobenius being an
    /// automorphism of order 2 with fixed field `F_p`.
    pub fn check_axioms(&self) -> Result<(), String> {
        let n = self.size as Elem;
        for x in 0..n {
            if self.add(x, 0) != x || self.mul(x, 1) != x {
                return Err(format!("{x} breaks a neutral element"));
            }
            if self.add(x, self.neg(x)) != 0 {
                return Err(format!("{x} has no additive inverse"));
            }
            if x != 0 && self.mul(x, self.inv(x)) != 1 {
                return Err(format!("{x} has no multiplicative inverse"));
            }
            if self.frob(self.frob(x)) != x {
                return Err(format!("Frobenius squared moves {x}"));
            }
            if (self.frob(x) == x) != ((x as usize) < self.p) {
                return Err(format!("Frobenius fixed field wrong at {x}"));
            }
            for y in 0..n {
                if self.add(x, y) != self.add(y, x) || self.mul(x, y) != self.mul(y, x) {
                    return Err(format!("{x}, {y} do not commute"));
                }
                if self.frob(self.add(x, y)) != self.add(self.frob(x), self.frob(y))
                    || self.frob(self.mul(x, y)) != self.mul(self.frob(x), self.frob(y))
                {
                    return Err(format!("Frobenius not a homomorphism at {x}, {y}"));
                }
                for z in 0..n {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z))
                        || self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z))
                    {
                        return Err(format!("not associative at {x}, {y}, {z}"));
                    }
                    if self.mul(x, self.add(y, z)) != self.add(self.mul(x, y), self.mul(x, z)) {
                        return Err(format!("not distributive at {x}, {y}, {z}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `0 1 w w2` over F4; `a+bt` indices as decimals otherwise.
    pub fn symbol(&self, x: Elem) -> String {
        if self.p == 2 {
            ["0", "1", "w", "w2"][x as usize].to_string()
        } else {
            x.to_string()
        }
    }

    pub fn parse_symbol(&self, s: &str) -> Option<Elem> {
        if self.p == 2 {
            ["0", "1", "w", "w2"].iter().position(|t| *t == s).map(|i| i as Elem)
        } else {
            s.parse::<usize>().ok().filter(|&x| x < self.size).map(|x| x as Elem)
        }
    }
}

impl fmt::Display for FieldFq2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_matches_the_corpus_ring() {
        let f = FieldFq2::f4();
        let r = crate::corpus::f4();
        for x in 0..4u8 {
            for y in 0..4u8 {
                assert_eq!(f.mul(x, y) as usize, r.mul(x as usize, y as usize));
                assert_eq!(f.add(x, y) as usize, r.add(x as usize, y as usize));
            }
        }
        assert_eq!((0..4).map(|x| f.frob(x)).collect::<Vec<_>>(), vec![0, 1, 3, 2]);
    }

    #[test]
    fn f9_and_bigger_pass_axioms() {
        for p in [3, 5, 7] {
            let f = FieldFq2::new(p).unwrap();
            assert_eq!(f.size(), p * p);
            assert_eq!(f.elements().filter(|&x| f.frob(x) == x).count(), p);
        }
        assert!(FieldFq2::new(4).is_err());
    }

    #[test]
    fn symbols_round_trip() {
        for f in [FieldFq2::f4(), FieldFq2::f9()] {
            for x in f.elements() {
                assert_eq!(f.parse_symbol(&f.symbol(x)), Some(x));
            }
        }
    }
}
