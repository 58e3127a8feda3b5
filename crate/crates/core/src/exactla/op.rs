use num_traits::One;

use super::sparse::{Accumulator, SparseVec};
use super::{Matrix, Scalar};

/// Column-sparse linear operator, used where dense products would be
/// wasteful (tensor powers, repeated application).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOp {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseOp {
    pub fn from_cols(rows: usize, cols: Vec<SparseVec>) -> Self {
        SparseOp { rows, cols }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        SparseOp {
            rows: m.rows(),
            cols: m.sparse_cols(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseOp {
            rows: n,
            cols: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseOp {
            rows,
            cols: vec![SparseVec::new(); cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn cols(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_sparse_cols(self.rows, &self.cols)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (j, c) in v.iter() {
            acc.add_vec(c, &self.cols[*j]);
        }
        acc.finish()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SparseOp) -> SparseOp {
        SparseOp {
            rows: self.rows,
            cols: inner.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, o: &SparseOp) -> SparseOp {
        SparseOp {
            rows: self.rows,
            cols: self.cols.iter().zip(&o.cols).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &SparseOp) -> SparseOp {
        SparseOp {
            rows: self.rows,
            cols: self.cols.iter().zip(&o.cols).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> SparseOp {
        SparseOp {
            rows: self.rows,
            cols: self.cols.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn conj(&self) -> SparseOp {
        SparseOp {
            rows: self.rows,
            cols: self.cols.iter().map(|v| v.conj()).collect(),
        }
    }

    /// `self ⊗ o` with index `(i, j) ↦ i·dim + j`.
    pub fn kron(&self, o: &SparseOp) -> SparseOp {
        let mut cols = Vec::with_capacity(self.cols.len() * o.cols.len());
        for a in &self.cols {
            for b in &o.cols {
                cols.push(kron_vec(a, b, o.rows));
            }
        }
        SparseOp {
            rows: self.rows * o.rows,
            cols,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols.len()
            && self
                .cols
                .iter()
                .enumerate()
                .all(|(j, c)| c.nnz() == 1 && c.entries()[0].0 == j && c.entries()[0].1.is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// First column where the operators differ.
    pub fn first_difference(&self, o: &SparseOp) -> Option<usize> {
        if self.rows != o.rows || self.cols.len() != o.cols.len() {
            return Some(0);
        }
        (0..self.cols.len()).find(|&j| self.cols[j] != o.cols[j])
    }
}

/// `a ⊗ b` for vectors, `b` of length `dim_b`.
pub fn kron_vec(a: &SparseVec, b: &SparseVec, dim_b: usize) -> SparseVec {
    let mut out = Vec::with_capacity(a.nnz() * b.nnz());
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            out.push((i * dim_b + j, x * y));
        }
    }
    // already sorted and free of repeats
    SparseVec::from_entries(out)
}
