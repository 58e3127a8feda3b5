use num_traits::Zero;

use super::matrix::null_space;
use super::sparse::{Echelon, Insertion, SparseVec};
use super::{LinAlgError, Scalar, Subspace};

/// Affine solution set `particular + space`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub space: Subspace,
}

impl Solution {
    pub fn is_unique(&self) -> bool {
        self.space.is_zero()
    }
}

/// Linear system assembled one equation at a time. Infeasibility is
/// detected as soon as an inconsistent equation arrives.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    ech: Echelon,
    infeasible_at: Option<usize>,
    count: usize,
}

impl LinearSystem {
    pub fn new(unknown_dim: usize) -> Self {
        LinearSystem {
            ech: Echelon::new(unknown_dim),
            infeasible_at: None,
            count: 0,
        }
    }

    pub fn unknown_dim(&self) -> usize {
        self.ech.dim()
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    /// Index of the first equation that contradicted the earlier ones.
    pub fn infeasible_at(&self) -> Option<usize> {
        self.infeasible_at
    }

    pub fn push(&mut self, row: &SparseVec, rhs: &Scalar) {
        let idx = self.count;
        self.count += 1;
        if self.infeasible_at.is_some() {
            return;
        }
        if row.is_zero() && rhs.is_zero() {
            return;
        }
        if let Insertion::Dependent(res) = self.ech.insert(row, &SparseVec::single(0, rhs.clone())) {
            if !res.is_zero() {
                self.infeasible_at = Some(idx);
            }
        }
    }

    pub fn solve(&self) -> Result<Solution, LinAlgError> {
        if self.infeasible_at.is_some() {
            return Err(LinAlgError::Infeasible);
        }
        let mut particular = vec![Scalar::zero(); self.ech.dim()];
        for (p, _, rhs) in self.ech.rows() {
            particular[p] = rhs.get(0);
        }
        Ok(Solution {
            particular,
            space: null_space(&self.ech),
        })
    }
}

/// Solves a list of `(row, rhs)` equations in `unknown_dim` unknowns.
pub fn solve_linear(constraints: &[(Vec<Scalar>, Scalar)], unknown_dim: usize) -> Result<Solution, LinAlgError> {
    let mut sys = LinearSystem::new(unknown_dim);
    for (row, rhs) in constraints {
        if row.len() != unknown_dim {
            return Err(LinAlgError::DimensionMismatch(format!(
                "constraint of length {} over {unknown_dim} unknowns",
                row.len()
            )));
        }
        sys.push(&SparseVec::from_dense(row), rhs);
    }
    sys.solve()
}
