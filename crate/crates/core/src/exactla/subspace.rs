use serde::{Deserialize, Serialize};

use super::sparse::{Echelon, SparseVec};
use super::{LinAlgError, Matrix, Scalar};

/// Subspace held as its reduced row echelon basis, so equal subspaces have
/// identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_sparse<I: IntoIterator<Item = SparseVec>>(ambient_dim: usize, vecs: I) -> Self {
        let mut ech = Echelon::new(ambient_dim);
        for v in vecs {
            ech.insert_left(&v);
            if ech.is_full() {
                break;
            }
        }
        Subspace {
            ambient_dim,
            basis: ech.basis(),
        }
    }

    pub fn span(ambient_dim: usize, vecs: &[Vec<Scalar>]) -> Self {
        Subspace::from_sparse(ambient_dim, vecs.iter().map(|v| SparseVec::from_dense(v)))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn basis_dense(&self) -> Vec<Vec<Scalar>> {
        self.basis.iter().map(|v| v.to_dense(self.ambient_dim)).collect()
    }

    /// Basis vectors as columns.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_sparse_cols(self.ambient_dim, &self.basis)
    }

    fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new(self.ambient_dim);
        for v in &self.basis {
            ech.insert_left(v);
        }
        ech
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.echelon().contains(v)
    }

    /// First vector of `vecs` not lying in this subspace.
    pub fn first_outside<'a, I: IntoIterator<Item = &'a SparseVec>>(&self, vecs: I) -> Option<usize> {
        let ech = self.echelon();
        vecs.into_iter().position(|v| !ech.contains(v))
    }

    pub fn leq(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        self.check_dim(other)?;
        Ok(other.first_outside(self.basis.iter()).is_none())
    }

    pub fn equal(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        self.check_dim(other)?;
        Ok(self == other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_dim(other)?;
        Ok(Subspace::from_sparse(
            self.ambient_dim,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        ))
    }

    fn check_dim(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinAlgError::DimensionMismatch(format!(
                "subspaces of ambient dimension {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    basis: Vec<Vec<(usize, Scalar)>>,
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SubspaceRepr {
            ambient_dim: self.ambient_dim,
            basis: self.basis.iter().map(|v| v.entries().to_vec()).collect(),
        }
        .serialize(s)
    }
}
