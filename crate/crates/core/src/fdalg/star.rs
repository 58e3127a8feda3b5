use crate::exactla::{Matrix, Scalar, SparseVec};

use super::Algebra;

/// Conjugate-linear involution `(Σ c_i e_i)* = Σ conj(c_i) J e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarStructure {
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarDiagnostics {
    pub involutive: bool,
    /// First basis pair with `(e_a e_b)* ≠ e_b* e_a*`.
    pub anti_multiplicative_failure: Option<(usize, usize)>,
}

impl StarDiagnostics {
    pub fn ok(&self) -> bool {
        self.involutive && self.anti_multiplicative_failure.is_none()
    }
}

impl StarStructure {
    pub fn new(matrix: Matrix) -> Self {
        StarStructure { matrix }
    }

    pub fn coefficient_conjugation(n: usize) -> Self {
        StarStructure {
            matrix: Matrix::identity(n),
        }
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        let c: Vec<Scalar> = x.iter().map(|v| v.conj()).collect();
        self.matrix.apply(&c)
    }

    /// Star on `A⊗A`: `J⊗J` after coefficient conjugation.
    pub fn tensor_square(&self) -> StarStructure {
        StarStructure {
            matrix: self.matrix.kron(&self.matrix),
        }
    }

    /// Matrix `X'` with `(X y*)* = X' y` for all `y`, i.e. `J·conj(X)·conj(J)`
    /// when J is its own conjugate-inverse.
    pub fn conjugate_operator(&self, x: &Matrix) -> Matrix {
        self.matrix.mul(&x.conj()).mul(&self.matrix.conj())
    }

    pub fn validate(&self, alg: &Algebra) -> StarDiagnostics {
        let n = alg.dim();
        let involutive = self.matrix.rows() == n && self.matrix.mul(&self.matrix.conj()).is_identity();
        let mut failure = None;
        if self.matrix.rows() == n && self.matrix.is_square() {
            let cols = self.matrix.sparse_cols();
            'outer: for a in 0..n {
                for b in 0..n {
                    let lhs = self.matrix.apply_sparse(&alg.product(a, b).conj());
                    let rhs = alg.mul_sparse(&cols[b], &cols[a]);
                    if lhs != rhs {
                        failure = Some((a, b));
                        break 'outer;
                    }
                }
            }
        } else {
            failure = Some((0, 0));
        }
        StarDiagnostics {
            involutive,
            anti_multiplicative_failure: failure,
        }
    }

    pub fn apply_sparse(&self, x: &SparseVec) -> SparseVec {
        self.matrix.apply_sparse(&x.conj())
    }
}
