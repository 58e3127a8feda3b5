use std::fmt;

use num_traits::{One, Zero};

use super::sparse::{Accumulator, Echelon, Insertion, SparseVec};
use super::subspace::Subspace;
use super::{LinAlgError, Scalar};

/// Dense row-major matrix over ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Scalar>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(LinAlgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_sparse_cols(rows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col.iter() {
                m.set(*i, j, c.clone());
            }
        }
        m
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, c) in d.iter().enumerate() {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn col_sparse(&self, c: usize) -> SparseVec {
        SparseVec::from_entries(
            (0..self.rows)
                .filter(|&r| !self.get(r, c).is_zero())
                .map(|r| (r, self.get(r, c).clone())),
        )
    }

    pub fn row_sparse(&self, r: usize) -> SparseVec {
        SparseVec::from_dense(self.row(r))
    }

    pub fn sparse_cols(&self) -> Vec<SparseVec> {
        let mut acc: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    acc[c].push((r, v.clone()));
                }
            }
        }
        acc.into_iter().map(SparseVec::from_entries).collect()
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn nonzeros(&self) -> Vec<(usize, usize, &Scalar)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    out.push((r, c, v));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.conj()).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix add shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sub shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Product skipping zero entries of both factors.
    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix mul shape");
        let o_rows: Vec<SparseVec> = (0..o.rows).map(|k| o.row_sparse(k)).collect();
        let mut out = Matrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            let mut acc = Accumulator::new();
            for (k, a) in self.row(r).iter().enumerate() {
                if !a.is_zero() {
                    acc.add_vec(a, &o_rows[k]);
                }
            }
            for (c, v) in acc.finish().iter() {
                out.set(r, *c, v.clone());
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix apply shape");
        (0..self.rows)
            .map(|r| {
                let mut s = Scalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s.add_mul(a, b);
                    }
                }
                s
            })
            .collect()
    }

    pub fn apply_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (j, c) in v.iter() {
            for r in 0..self.rows {
                acc.add_mul(r, self.get(r, *j), c);
            }
        }
        acc.finish()
    }

    /// Kronecker product; index `(i, j) ↦ i·dim(other) + j` on both sides.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * o.rows, self.cols * o.cols);
        let on = o.nonzeros();
        for (r1, c1, a) in self.nonzeros() {
            for &(r2, c2, b) in &on {
                out.set(r1 * o.rows + r2, c1 * o.cols + c2, a * b);
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    /// First entry where the matrices differ.
    pub fn first_difference(&self, o: &Matrix) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Some((0, 0));
        }
        (0..self.data.len())
            .find(|&i| self.data[i] != o.data[i])
            .map(|i| (i / self.cols, i % self.cols))
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && self.mul(self) == *self
    }

    pub fn rank(&self) -> usize {
        self.image().dim()
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_sparse(self.rows, self.sparse_cols())
    }

    pub fn kernel(&self) -> Subspace {
        let mut ech = Echelon::new(self.rows);
        let mut kernel = Vec::new();
        for (j, col) in self.sparse_cols().into_iter().enumerate() {
            if let Insertion::Dependent(r) = ech.insert(&col, &SparseVec::unit(j)) {
                kernel.push(r);
            }
        }
        Subspace::from_sparse(self.cols, kernel)
    }

    pub fn rank_image_kernel(&self) -> (usize, Subspace, Subspace) {
        let image = self.image();
        let kernel = self.kernel();
        (image.dim(), image, kernel)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut ech = Echelon::new(n);
        for r in 0..n {
            if let Insertion::Dependent(_) = ech.insert(&self.row_sparse(r), &SparseVec::unit(r)) {
                return None;
            }
        }
        // Reduced row p reads e_p = Σ_r t_r·(row r of self), so its tag is row p of the inverse.
        let mut inv = Matrix::zeros(n, n);
        for (p, _, tag) in ech.rows() {
            for (r, c) in tag.iter() {
                inv.set(p, *r, c.clone());
            }
        }
        Some(inv)
    }
}

/// Solves `a · x = b` for a matrix `x` (one column per column of `b`).
/// Returns a particular solution and the null space of `a`.
pub fn solve_matrix(a: &Matrix, b: &Matrix) -> Result<(Matrix, Subspace), LinAlgError> {
    if a.rows() != b.rows() {
        return Err(LinAlgError::DimensionMismatch(format!(
            "solve: {} rows against {} rows",
            a.rows(),
            b.rows()
        )));
    }
    let mut ech = Echelon::new(a.cols());
    for r in 0..a.rows() {
        if let Insertion::Dependent(res) = ech.insert(&a.row_sparse(r), &b.row_sparse(r)) {
            if !res.is_zero() {
                return Err(LinAlgError::Infeasible);
            }
        }
    }
    let mut x = Matrix::zeros(a.cols(), b.cols());
    for (p, _, rhs) in ech.rows() {
        for (c, v) in rhs.iter() {
            x.set(p, *c, v.clone());
        }
    }
    Ok((x, null_space(&ech)))
}

/// Null space of the row space held in `ech` (solutions of `row · x = 0`).
pub(crate) fn null_space(ech: &Echelon) -> Subspace {
    let pivots = ech.pivots();
    let free: Vec<usize> = (0..ech.dim()).filter(|c| pivots.binary_search(c).is_err()).collect();
    let mut vecs = Vec::with_capacity(free.len());
    for &f in &free {
        let mut entries = vec![(f, Scalar::one())];
        for (p, row, _) in ech.rows() {
            let c = row.get(f);
            if !c.is_zero() {
                entries.push((p, -c));
            }
        }
        vecs.push(SparseVec::from_entries(entries));
    }
    Subspace::from_sparse(ech.dim(), vecs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_int_rows(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        assert!(Matrix::from_int_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kron_index_convention() {
        let a = Matrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_int_rows(&[&[0, 5], &[6, 7]]);
        let k = a.kron(&b);
        // (i,j) ↦ i·2 + j
        assert_eq!(k.get(1 * 2 + 0, 0 * 2 + 1), &Scalar::from_int(3 * 5));
        assert_eq!(k.get(0 * 2 + 1, 1 * 2 + 1), &Scalar::from_int(2 * 7));
    }

    #[test]
    fn solve_reports_infeasible() {
        let a = Matrix::from_int_rows(&[&[1], &[1]]);
        let b = Matrix::from_int_rows(&[&[1], &[2]]);
        assert!(matches!(solve_matrix(&a, &b), Err(LinAlgError::Infeasible)));
    }

    #[test]
    fn sparse_mul_matches_naive() {
        let a = Matrix::from_int_rows(&[&[1, 0, 2], &[0, 3, 0]]);
        let b = Matrix::from_int_rows(&[&[1, 1], &[0, 2], &[4, 0]]);
        assert_eq!(a.mul(&b), Matrix::from_int_rows(&[&[9, 1], &[0, 6]]));
    }
}
