//! Exact linear algebra over the Gaussian rationals ℚ(i).

mod ginv;
mod matrix;
mod op;
mod scalar;
mod solve;
pub mod sparse;
mod subspace;

pub use ginv::{generalized_inverse, generalized_inverse_by_constraints, ProjectionViolation};
pub use matrix::{solve_matrix, Matrix};
pub use op::{kron_vec, SparseOp};
pub use scalar::{rational_string, Scalar};
pub use solve::{solve_linear, LinearSystem, Solution};
pub use sparse::{Accumulator, Echelon, Insertion, SparseVec};
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system is infeasible")]
    Infeasible,
    #[error("linear system is underdetermined ({0} free directions)")]
    Underdetermined(usize),
    #[error("bad projections: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    BadProjections(Vec<ProjectionViolation>),
}

/// `(rank, image, kernel)` of a matrix.
pub fn rank_image_kernel(t: &Matrix) -> (usize, Subspace, Subspace) {
    t.rank_image_kernel()
}

pub fn subspace_equal(u: &Subspace, v: &Subspace) -> Result<bool, LinAlgError> {
    u.equal(v)
}

pub fn subspace_leq(u: &Subspace, v: &Subspace) -> Result<bool, LinAlgError> {
    u.leq(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_image_kernel_examples() {
        let (r, im, ker) = rank_image_kernel(&Matrix::identity(2));
        assert_eq!(r, 2);
        assert!(im.is_full());
        assert!(ker.is_zero());

        let t = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let (r, im, ker) = rank_image_kernel(&t);
        let e1 = Subspace::from_sparse(2, [SparseVec::unit(0)]);
        assert_eq!(r, 1);
        assert_eq!(im, e1);
        assert_eq!(ker, e1);

        let (r, im, ker) = rank_image_kernel(&Matrix::zeros(3, 3));
        assert_eq!(r, 0);
        assert!(im.is_zero());
        assert!(ker.is_full());
    }
}
