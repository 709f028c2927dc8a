use rand::Rng;

use super::field::{Elem, FieldFq2};

/// A dense matrix of field elements, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics unless every row has `cols` entries.
    pub fn from_rows(rows: usize, cols: usize, entries: &[Vec<Elem>]) -> Self {
        assert_eq!(entries.len(), rows, "row count");
        let mut data = Vec::with_capacity(rows * cols);
        for r in entries {
            assert_eq!(r.len(), cols, "column count");
            data.extend_from_slice(r);
        }
        Self { rows, cols, data }
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    /// A column vector.
    pub fn column_vector(v: &[Elem]) -> Self {
        Self::from_flat(v.len(), 1, v.to_vec())
    }

    pub fn random(field: &FieldFq2, rows: usize, cols: usize, rng: &mut impl Rng) -> Self {
        let data = (0..rows * cols).map(|_| rng.gen_range(0..field.size()) as Elem).collect();
        Self { rows, cols, data }
    }

    /// The matrix whose entries are the base-`|F|` digits of `index`.
    pub fn nth(field: &FieldFq2, rows: usize, cols: usize, mut index: u64) -> Self {
        let q = field.size() as u64;
        let data = (0..rows * cols)
            .map(|_| {
                let d = (index % q) as Elem;
                index /= q;
                d
            })
            .collect();
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, field: &FieldFq2, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, field: &FieldFq2, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shapes");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| field.add(a, b)).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self, field: &FieldFq2) -> Self {
        Self { data: self.data.iter().map(|&a| field.neg(a)).collect(), ..self.clone() }
    }

    pub fn scale(&self, field: &FieldFq2, c: Elem) -> Self {
        Self { data: self.data.iter().map(|&a| field.mul(c, a)).collect(), ..self.clone() }
    }

    /// Entrywise Frobenius.
    pub fn frob(&self, field: &FieldFq2) -> Self {
        Self { data: self.data.iter().map(|&a| field.frob(a)).collect(), ..self.clone() }
    }

    pub fn hstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..cols {
                let v = if j < self.cols { self.get(i, j) } else { other.get(i, j - self.cols) };
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn select_columns(&self, columns: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, columns.len());
        for i in 0..self.rows {
            for (k, &j) in columns.iter().enumerate() {
                out.set(i, k, self.get(i, j));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: std::ops::Range<usize>) -> Self {
        let data = self.data[rows.start * self.cols..rows.end * self.cols].to_vec();
        Self { rows: rows.len(), cols: self.cols, data }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self, field: &FieldFq2) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            for j in 0..m.cols {
                let (a, b) = (m.get(r, j), m.get(p, j));
                m.set(r, j, b);
                m.set(p, j, a);
            }
            let inv = field.inv(m.get(r, c));
            for j in 0..m.cols {
                m.set(r, j, field.mul(inv, m.get(r, j)));
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = field.sub(m.get(i, j), field.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, field: &FieldFq2) -> usize {
        self.rref(field).1.len()
    }

    /// The nonzero rows of the reduced echelon form: a basis of the row space.
    pub fn row_basis(&self, field: &FieldFq2) -> Matrix {
        let (r, pivots) = self.rref(field);
        r.select_rows(0..pivots.len())
    }

    /// Columns spanning the null space, one per free column.
    pub fn null_space(&self, field: &FieldFq2) -> Matrix {
        let (r, pivots) = self.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, 1);
            for (i, &p) in pivots.iter().enumerate() {
                basis.set(p, k, field.neg(r.get(i, f)));
            }
        }
        basis
    }

    /// The pivot columns: a basis of the column space.
    pub fn column_basis(&self, field: &FieldFq2) -> Matrix {
        let (_, pivots) = self.rref(field);
        self.select_columns(&pivots)
    }

    /// Rows `y` with `y·M = 0`, as a matrix with those rows.
    pub fn left_null_space(&self, field: &FieldFq2) -> Matrix {
        self.transpose().null_space(field).transpose()
    }

    /// Some `X` with `self · X = b`, if one exists.
    pub fn solve(&self, field: &FieldFq2, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let (r, pivots) = self.hstack(b).rref(field);
        if pivots.last().is_some_and(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(i, self.cols + j));
            }
        }
        Some(x)
    }

    /// Whether the column spaces satisfy `span(self) ⊆ span(other)`.
    pub fn columns_within(&self, field: &FieldFq2, other: &Matrix) -> bool {
        other.rank(field) == other.hstack(self).rank(field)
    }

    pub fn render(&self, field: &FieldFq2) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| field.symbol(x)).collect::<Vec<_>>().join(" "))
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn null_space_is_annihilated() {
        let f = FieldFq2::f4();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let (r, c) = (rng.gen_range(1..5), rng.gen_range(1..5));
            let m = Matrix::random(&f, r, c, &mut rng);
            let k = m.null_space(&f);
            assert!(m.mul(&f, &k).is_zero());
            assert_eq!(k.cols() + m.rank(&f), c);
            assert_eq!(k.rank(&f), k.cols());
            assert!(m.left_null_space(&f).mul(&f, &m).is_zero());
        }
    }

    #[test]
    fn solve_finds_solutions() {
        let f = FieldFq2::f9();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a = Matrix::random(&f, 3, 4, &mut rng);
            let x = Matrix::random(&f, 4, 2, &mut rng);
            let b = a.mul(&f, &x);
            let y = a.solve(&f, &b).unwrap();
            assert_eq!(a.mul(&f, &y), b);
        }
        let zero = Matrix::zeros(2, 2);
        assert!(zero.solve(&f, &Matrix::identity(2)).is_none());
    }

    #[test]
    fn frobenius_commutes_with_echelon_form() {
        let f = FieldFq2::f4();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m = Matrix::random(&f, 3, 3, &mut rng);
            let (r, p) = m.rref(&f);
            let (rf, pf) = m.frob(&f).rref(&f);
            assert_eq!(p, pf);
            assert_eq!(r.frob(&f), rf);
        }
    }
}
