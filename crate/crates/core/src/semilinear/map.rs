use std::fmt;
use std::sync::Arc;

use super::field::{Elem, FieldFq2};
use super::matrix::Matrix;
use super::SemilinearError;
use crate::morphism::Variance;

/// A map `F^cols → F^rows` acting by `v ↦ M·v` (straight) or
/// `v ↦ M·frob(v)` (anti).
#[derive(Debug, Clone)]
pub struct SemilinearMap {
    field: Arc<FieldFq2>,
    matrix: Matrix,
    twist: Variance,
}

impl PartialEq for SemilinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.twist == other.twist && self.matrix == other.matrix && *self.field == *other.field
    }
}

impl Eq for SemilinearMap {}

/// A subspace of `F^n` given by the columns of a full-column-rank basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Matrix,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

/// A quotient `F^n / U` with coordinates `v ↦ Q·v`, where `Ker Q = U` and
/// `Q` has full row rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub ambient: usize,
    pub coordinates: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.coordinates.rows()
    }
}

/// The three maps of `x → Coim f* → Im f* → y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSequence {
    pub onto_coimage: SemilinearMap,
    pub middle: SemilinearMap,
    pub into_target: SemilinearMap,
}

impl FactorSequence {
    pub fn composite(&self) -> Result<SemilinearMap, SemilinearError> {
        self.into_target.compose(&self.middle.compose(&self.onto_coimage)?)
    }
}

/// Coordinates on `F^n / span(basis)`.
pub fn quotient_by(field: &FieldFq2, ambient: usize, basis: &Matrix) -> Quotient {
    let coordinates = if basis.cols() == 0 { Matrix::identity(ambient) } else { basis.left_null_space(field) };
    Quotient { ambient, coordinates }
}

impl SemilinearMap {
    pub fn new(field: Arc<FieldFq2>, matrix: Matrix, twist: Variance) -> Result<Self, SemilinearError> {
        if let Some(&x) = matrix.entries().iter().find(|&&x| x as usize >= field.size()) {
            return Err(SemilinearError::NotAFieldElement(x as usize));
        }
        Ok(Self { field, matrix, twist })
    }

    pub fn identity(field: &Arc<FieldFq2>, n: usize) -> Self {
        Self { field: field.clone(), matrix: Matrix::identity(n), twist: Variance::Straight }
    }

    /// `1*` on `F^n`: the identity matrix with the anti twist, so
    /// `1*(v) = frob(v)` in the standard basis.
    pub fn reverse(field: &Arc<FieldFq2>, n: usize) -> Self {
        Self { field: field.clone(), matrix: Matrix::identity(n), twist: Variance::Anti }
    }

    pub fn zero(field: &Arc<FieldFq2>, rows: usize, cols: usize, twist: Variance) -> Self {
        Self { field: field.clone(), matrix: Matrix::zeros(rows, cols), twist }
    }

    pub fn field(&self) -> &Arc<FieldFq2> {
        &self.field
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn twist(&self) -> Variance {
        self.twist
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn with_twist(&self, twist: Variance) -> Self {
        Self { twist, ..self.clone() }
    }

    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.source_dim(), "vector length");
        let f = &self.field;
        let input: Vec<Elem> = match self.twist {
            Variance::Straight => v.to_vec(),
            Variance::Anti => v.iter().map(|&x| f.frob(x)).collect(),
        };
        self.matrix.mul(f, &Matrix::column_vector(&input)).column(0)
    }

    /// The straight matrix `E` with `f(v) = 0 ⟺ E·v = 0`: `M` for straight
    /// maps and `frob(M)` for anti maps.
    pub fn effective_matrix(&self) -> Matrix {
        match self.twist {
            Variance::Straight => self.matrix.clone(),
            Variance::Anti => self.matrix.frob(&self.field),
        }
    }

    fn same_field(&self, other: &Self) -> Result<(), SemilinearError> {
        if *self.field != *other.field {
            return Err(SemilinearError::FieldMismatch(self.field.name(), other.field.name()));
        }
        Ok(())
    }

    /// `self ∘ inner`: twists XOR, and the inner matrix is conjugated by
    /// the Frobenius when `self` is anti.
    pub fn compose(&self, inner: &SemilinearMap) -> Result<SemilinearMap, SemilinearError> {
        self.same_field(inner)?;
        if self.source_dim() != inner.target_dim() {
            return Err(SemilinearError::DimensionMismatch {
                expected: self.source_dim(),
                found: inner.target_dim(),
            });
        }
        let right = match self.twist {
            Variance::Straight => inner.matrix.clone(),
            Variance::Anti => inner.matrix.frob(&self.field),
        };
        Ok(Self {
            field: self.field.clone(),
            matrix: self.matrix.mul(&self.field, &right),
            twist: self.twist.xor(inner.twist),
        })
    }

    /// `*`-composition of anti maps, `g * f = g ∘ 1* ∘ f`.
    pub fn star(&self, inner: &SemilinearMap) -> Result<SemilinearMap, SemilinearError> {
        if self.twist != Variance::Anti || inner.twist != Variance::Anti {
            return Err(SemilinearError::NotAnti);
        }
        self.compose(&SemilinearMap::reverse(&self.field, self.source_dim()).compose(inner)?)
    }

    /// `f ↦ f ∘ 1*`, in both directions between Hom and An.
    pub fn correspond(&self) -> SemilinearMap {
        self.compose(&SemilinearMap::reverse(&self.field, self.source_dim())).expect("square reverse")
    }

    /// Entrywise sum of two maps with the same twist and shape.
    pub fn add(&self, other: &SemilinearMap) -> Result<SemilinearMap, SemilinearError> {
        self.same_field(other)?;
        if self.twist != other.twist {
            return Err(SemilinearError::NotAnti);
        }
        if (self.source_dim(), self.target_dim()) != (other.source_dim(), other.target_dim()) {
            return Err(SemilinearError::DimensionMismatch {
                expected: self.source_dim(),
                found: other.source_dim(),
            });
        }
        Ok(Self { matrix: self.matrix.add(&self.field, &other.matrix), ..self.clone() })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank(&self.field)
    }

    /// The zero set `{v : f(v) = 0}`.
    pub fn kernel(&self) -> Subspace {
        Subspace { ambient: self.source_dim(), basis: self.effective_matrix().null_space(&self.field) }
    }

    pub fn image(&self) -> Subspace {
        Subspace { ambient: self.target_dim(), basis: self.matrix.column_basis(&self.field) }
    }

    /// `x / Ker f`, with coordinates given by the echelon rows of the
    /// effective matrix.
    pub fn coimage(&self) -> Quotient {
        Quotient { ambient: self.source_dim(), coordinates: self.effective_matrix().row_basis(&self.field) }
    }

    /// `y / Im f`.
    pub fn cokernel(&self) -> Quotient {
        quotient_by(&self.field, self.target_dim(), &self.image().basis)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source_dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target_dim()
    }

    /// `x → Coim f → Im f → y` with a straight surjection, a middle map
    /// carrying the twist, and a straight injection.
    pub fn factor_sequence(&self) -> FactorSequence {
        let field = &self.field;
        let coim = self.coimage();
        let onto_coimage = Self { field: field.clone(), matrix: coim.coordinates, twist: Variance::Straight };
        let into_target = Self { field: field.clone(), matrix: self.image().basis, twist: Variance::Straight };
        // M = C·R with C the pivot columns and R the echelon rows of M;
        // for anti maps the echelon rows of frob(M) are frob(R).
        let r = self.rank();
        let middle = Self { field: field.clone(), matrix: Matrix::identity(r), twist: self.twist };
        FactorSequence { onto_coimage, middle, into_target }
    }

    pub fn describe(&self) -> String {
        format!(
            "{}^{} -> {}^{} {} {}",
            self.field.name(),
            self.source_dim(),
            self.field.name(),
            self.target_dim(),
            self.twist,
            self.matrix.render(&self.field)
        )
    }
}

impl fmt::Display for SemilinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Every vector of `F^n`, in index order.
pub fn all_vectors(field: &FieldFq2, n: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
    let count = (field.size() as u64).pow(n as u32);
    (0..count).map(move |i| Matrix::nth(field, n, 1, i).column(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f4() -> Arc<FieldFq2> {
        Arc::new(FieldFq2::f4())
    }

    #[test]
    fn anti_maps_are_semilinear() {
        let f = f4();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = SemilinearMap::new(f.clone(), Matrix::random(&f, 3, 2, &mut rng), Variance::Anti).unwrap();
        for v in all_vectors(&f, 2) {
            for l in f.elements() {
                let scaled: Vec<Elem> = v.iter().map(|&x| f.mul(l, x)).collect();
                let expected: Vec<Elem> = m.apply(&v).iter().map(|&y| f.mul(f.frob(l), y)).collect();
                assert_eq!(m.apply(&scaled), expected);
            }
        }
    }

    #[test]
    fn composition_matches_application() {
        let f = f4();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..40 {
            let tw = |b: bool| if b { Variance::Anti } else { Variance::Straight };
            let g = SemilinearMap::new(f.clone(), Matrix::random(&f, 2, 3, &mut rng), tw(rng.gen())).unwrap();
            let h = SemilinearMap::new(f.clone(), Matrix::random(&f, 3, 2, &mut rng), tw(rng.gen())).unwrap();
            let gh = g.compose(&h).unwrap();
            assert_eq!(gh.twist(), g.twist().xor(h.twist()));
            for v in all_vectors(&f, 2) {
                assert_eq!(gh.apply(&v), g.apply(&h.apply(&v)));
            }
        }
    }

    #[test]
    fn zero_map_and_reverse() {
        let f = f4();
        let z = SemilinearMap::zero(&f, 3, 3, Variance::Anti);
        assert_eq!(z.kernel().dim(), 3);
        assert_eq!(z.image().dim(), 0);
        let seq = z.factor_sequence();
        assert_eq!((seq.middle.source_dim(), seq.middle.target_dim()), (0, 0));
        assert_eq!(seq.composite().unwrap(), z);
        let rev = SemilinearMap::reverse(&f, 3);
        assert_eq!(rev.kernel().dim(), 0);
        assert!(rev.is_injective() && rev.is_surjective());
        assert_eq!(rev.compose(&rev).unwrap(), SemilinearMap::identity(&f, 3));
    }

    #[test]
    fn kernel_is_the_zero_set() {
        let f = f4();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let m = SemilinearMap::new(f.clone(), Matrix::random(&f, 2, 3, &mut rng), Variance::Anti).unwrap();
            let k = m.kernel();
            let zeros = all_vectors(&f, 3).filter(|v| m.apply(v).iter().all(|&x| x == 0)).count();
            assert_eq!(zeros, f.size().pow(k.dim() as u32));
            for j in 0..k.dim() {
                assert!(m.apply(&k.basis.column(j)).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn factor_sequence_recomposes() {
        let f = f4();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let (r, c) = (rng.gen_range(1..5), rng.gen_range(1..5));
            let m = SemilinearMap::new(f.clone(), Matrix::random(&f, r, c, &mut rng), Variance::Anti).unwrap();
            let seq = m.factor_sequence();
            assert_eq!(seq.composite().unwrap(), m);
            assert_eq!(seq.middle.twist(), Variance::Anti);
            assert!(seq.onto_coimage.is_surjective() && seq.into_target.is_injective());
        }
    }
}
