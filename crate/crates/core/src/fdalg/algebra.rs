use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::exactla::{Accumulator, Echelon, LinearSystem, Matrix, Scalar, SparseVec, Subspace};

use super::AlgebraError;

/// Finite-dimensional algebra given by structure constants
/// `e_i·e_j = Σ_k m[i][j][k] e_k`.
#[derive(Clone, Debug)]
pub struct Algebra {
    dim: usize,
    labels: Vec<String>,
    prod: Vec<SparseVec>,
    left_ops: OnceLock<Vec<Matrix>>,
    right_ops: OnceLock<Vec<Matrix>>,
}

impl PartialEq for Algebra {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.labels == o.labels && self.prod == o.prod
    }
}

/// Result of [`Algebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDiagnostics {
    /// First basis triple `(i, j, k)` with `(e_i e_j) e_k ≠ e_i (e_j e_k)`.
    pub associativity_failure: Option<(usize, usize, usize)>,
    /// Nonzero `m` with `m·A = 0`.
    pub left_degenerate: Option<Vec<Scalar>>,
    /// Nonzero `m` with `A·m = 0`.
    pub right_degenerate: Option<Vec<Scalar>>,
    pub idempotent: bool,
    pub unit: Option<Vec<Scalar>>,
}

impl AlgebraDiagnostics {
    pub fn associative(&self) -> bool {
        self.associativity_failure.is_none()
    }

    pub fn nondegenerate(&self) -> bool {
        self.left_degenerate.is_none() && self.right_degenerate.is_none()
    }
}

impl Algebra {
    /// Builds an algebra from sparse structure constants `(i, j, k, value)`.
    /// Associativity is not enforced here; see [`Algebra::validate`].
    pub fn from_structure(
        dim: usize,
        labels: Option<Vec<String>>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self, AlgebraError> {
        let labels = match labels {
            Some(l) if l.len() != dim => {
                return Err(AlgebraError::Shape(format!("{} labels for dimension {dim}", l.len())))
            }
            Some(l) => l,
            None => (0..dim).map(|i| format!("e{i}")).collect(),
        };
        let mut acc: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::Shape(format!(
                    "structure index ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            acc[i * dim + j].push((k, c));
        }
        Ok(Algebra {
            dim,
            labels,
            prod: acc.into_iter().map(SparseVec::from_entries).collect(),
            left_ops: OnceLock::new(),
            right_ops: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// `e_i · e_j`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.prod[i * self.dim + j]
    }

    /// Sparse structure constants in `(i, j, k)` order.
    pub fn structure_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.product(i, j).iter() {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn with_structure_entry(&self, i: usize, j: usize, k: usize, value: Scalar) -> Algebra {
        let mut entries: Vec<_> = self
            .structure_entries()
            .into_iter()
            .filter(|e| (e.0, e.1, e.2) != (i, j, k))
            .collect();
        entries.push((i, j, k, value));
        Algebra::from_structure(self.dim, Some(self.labels.clone()), entries).expect("indices already valid")
    }

    pub fn mul_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a * b;
                acc.add_vec(&ab, self.product(*i, *j));
            }
        }
        acc.finish()
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.mul_sparse(&SparseVec::from_dense(x), &SparseVec::from_dense(y))
            .to_dense(self.dim)
    }

    /// Matrix of `y ↦ x·y`.
    pub fn mult_operator_left(&self, x: &[Scalar]) -> Matrix {
        let xs = SparseVec::from_dense(x);
        let cols: Vec<SparseVec> = (0..self.dim)
            .map(|j| self.mul_sparse(&xs, &SparseVec::unit(j)))
            .collect();
        Matrix::from_sparse_cols(self.dim, &cols)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn mult_operator_right(&self, x: &[Scalar]) -> Matrix {
        let xs = SparseVec::from_dense(x);
        let cols: Vec<SparseVec> = (0..self.dim)
            .map(|j| self.mul_sparse(&SparseVec::unit(j), &xs))
            .collect();
        Matrix::from_sparse_cols(self.dim, &cols)
    }

    /// Left multiplication operators of the basis elements.
    pub fn left_ops(&self) -> &[Matrix] {
        self.left_ops.get_or_init(|| {
            (0..self.dim)
                .map(|i| {
                    let cols: Vec<SparseVec> = (0..self.dim).map(|j| self.product(i, j).clone()).collect();
                    Matrix::from_sparse_cols(self.dim, &cols)
                })
                .collect()
        })
    }

    /// Right multiplication operators of the basis elements.
    pub fn right_ops(&self) -> &[Matrix] {
        self.right_ops.get_or_init(|| {
            (0..self.dim)
                .map(|i| {
                    let cols: Vec<SparseVec> = (0..self.dim).map(|j| self.product(j, i).clone()).collect();
                    Matrix::from_sparse_cols(self.dim, &cols)
                })
                .collect()
        })
    }

    /// Multiplication map `A⊗A → A` as a `dim × dim²` matrix.
    pub fn mult_map(&self) -> Matrix {
        let cols: Vec<SparseVec> = (0..self.dim * self.dim).map(|ij| self.prod[ij].clone()).collect();
        Matrix::from_sparse_cols(self.dim, &cols)
    }

    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.product(i, j);
                for k in 0..self.dim {
                    let lhs = self.mul_sparse(ij, &SparseVec::unit(k));
                    let rhs = self.mul_sparse(&SparseVec::unit(i), self.product(j, k));
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Nonzero `m` with `m·e_j = 0` for all `j`, if any.
    pub fn left_annihilator(&self) -> Option<Vec<Scalar>> {
        self.annihilator(true)
    }

    /// Nonzero `m` with `e_j·m = 0` for all `j`, if any.
    pub fn right_annihilator(&self) -> Option<Vec<Scalar>> {
        self.annihilator(false)
    }

    fn annihilator(&self, left: bool) -> Option<Vec<Scalar>> {
        let mut sys = LinearSystem::new(self.dim);
        for j in 0..self.dim {
            // row k of the map m ↦ m·e_j (or e_j·m)
            let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.dim];
            for i in 0..self.dim {
                let p = if left { self.product(i, j) } else { self.product(j, i) };
                for (k, c) in p.iter() {
                    rows[*k].push((i, c.clone()));
                }
            }
            for r in rows {
                sys.push(&SparseVec::from_entries(r), &Scalar::zero());
            }
        }
        let sol = sys.solve().expect("homogeneous system");
        sol.space.basis().first().map(|v| v.to_dense(self.dim))
    }

    pub fn is_idempotent(&self) -> bool {
        Subspace::from_sparse(self.dim, self.prod.iter().cloned()).is_full()
    }

    /// Two-sided unit, if the defining linear system is solvable.
    pub fn find_unit(&self) -> Option<Vec<Scalar>> {
        let n = self.dim;
        let mut sys = LinearSystem::new(n);
        for j in 0..n {
            let mut lrows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
            let mut rrows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
            for i in 0..n {
                for (k, c) in self.product(i, j).iter() {
                    lrows[*k].push((i, c.clone()));
                }
                for (k, c) in self.product(j, i).iter() {
                    rrows[*k].push((i, c.clone()));
                }
            }
            for (k, (l, r)) in lrows.into_iter().zip(rrows).enumerate() {
                let rhs = if k == j { Scalar::one() } else { Scalar::zero() };
                sys.push(&SparseVec::from_entries(l), &rhs);
                sys.push(&SparseVec::from_entries(r), &rhs);
            }
        }
        sys.solve().ok().map(|s| s.particular)
    }

    pub fn validate(&self) -> AlgebraDiagnostics {
        AlgebraDiagnostics {
            associativity_failure: self.associativity_failure(),
            left_degenerate: self.left_annihilator(),
            right_degenerate: self.right_annihilator(),
            idempotent: self.is_idempotent(),
            unit: self.find_unit(),
        }
    }

    /// `self ⊗ other` with basis index `(i, j) ↦ i·dim(other) + j`.
    pub fn tensor(&self, other: &Algebra) -> Algebra {
        let (n, m) = (self.dim, other.dim);
        let mut entries = Vec::new();
        for i in 0..n {
            for k in 0..n {
                let ik = self.product(i, k);
                if ik.is_zero() {
                    continue;
                }
                for j in 0..m {
                    for l in 0..m {
                        for (p, a) in ik.iter() {
                            for (q, b) in other.product(j, l).iter() {
                                entries.push((i * m + j, k * m + l, p * m + q, a * b));
                            }
                        }
                    }
                }
            }
        }
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        Algebra::from_structure(n * m, Some(labels), entries).expect("tensor indices in range")
    }

    pub fn opposite(&self) -> Algebra {
        let mut entries = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.product(j, i).iter() {
                    entries.push((i, j, *k, c.clone()));
                }
            }
        }
        Algebra::from_structure(self.dim, Some(self.labels.clone()), entries).expect("same indices")
    }

    pub fn span_of(&self, vecs: impl IntoIterator<Item = SparseVec>) -> Subspace {
        let mut ech = Echelon::new(self.dim);
        for v in vecs {
            ech.insert_left(&v);
        }
        Subspace::from_sparse(self.dim, ech.basis())
    }
}

/// Flip `σ(e_i ⊗ e_j) = e_j ⊗ e_i` on `A⊗A` for `dim A = n`.
pub fn flip_map(n: usize) -> Matrix {
    let mut m = Matrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            m.set(j * n + i, i * n + j, Scalar::one());
        }
    }
    m
}

pub fn flatten(i: usize, j: usize, dim_b: usize) -> usize {
    i * dim_b + j
}

pub fn unflatten(ij: usize, dim_b: usize) -> (usize, usize) {
    (ij / dim_b, ij % dim_b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: i64) -> Scalar {
        Scalar::from_int(x)
    }

    /// 2×2 matrix units E_ab, basis index a·2+b.
    pub(crate) fn matrix_units() -> Algebra {
        let mut entries = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for d in 0..2 {
                    entries.push((a * 2 + b, b * 2 + d, a * 2 + d, s(1)));
                }
            }
        }
        Algebra::from_structure(4, None, entries).unwrap()
    }

    fn z2() -> Algebra {
        Algebra::from_structure(
            2,
            None,
            vec![(0, 0, 0, s(1)), (0, 1, 1, s(1)), (1, 0, 1, s(1)), (1, 1, 0, s(1))],
        )
        .unwrap()
    }

    #[test]
    fn group_algebra_z2_is_unital() {
        let d = z2().validate();
        assert!(d.associative() && d.nondegenerate() && d.idempotent);
        assert_eq!(d.unit, Some(vec![s(1), s(0)]));
    }

    #[test]
    fn square_zero_is_degenerate() {
        let a = Algebra::from_structure(1, None, vec![]).unwrap();
        let d = a.validate();
        assert!(d.left_degenerate.is_some());
        assert!(!d.idempotent);
        assert_eq!(d.unit, None);
    }

    #[test]
    fn matrix_units_opposite_is_transpose_algebra() {
        let a = matrix_units();
        let op = a.opposite();
        assert_ne!(a, op);
        assert_eq!(op.opposite(), a);
        assert_eq!(
            a.multiply(&[s(0), s(1), s(0), s(0)], &[s(0), s(0), s(1), s(0)]),
            vec![s(1), s(0), s(0), s(0)]
        );
        assert_eq!(
            op.multiply(&[s(0), s(1), s(0), s(0)], &[s(0), s(0), s(1), s(0)]),
            vec![s(0), s(0), s(0), s(1)]
        );
    }

    #[test]
    fn abelian_opposite_is_itself() {
        assert_eq!(z2().opposite(), z2());
    }

    #[test]
    fn tensor_products_factorwise() {
        let a = z2();
        let b = matrix_units();
        let t = a.tensor(&b);
        assert_eq!(t.dim(), 8);
        for i in 0..2 {
            for k in 0..2 {
                for j in 0..4 {
                    for l in 0..4 {
                        let expect: SparseVec = SparseVec::from_entries(
                            a.product(i, k)
                                .iter()
                                .flat_map(|(p, x)| b.product(j, l).iter().map(move |(q, y)| (p * 4 + q, x * y))),
                        );
                        assert_eq!(t.product(i * 4 + j, k * 4 + l), &expect);
                    }
                }
            }
        }
        assert!(t.validate().nondegenerate());
    }

    #[test]
    fn flip_is_involutive() {
        let f = flip_map(3);
        assert!(f.mul(&f).is_identity());
        assert_eq!(unflatten(flatten(2, 1, 3), 3), (2, 1));
    }
}
