use num_traits::Zero;

use crate::exactla::{Accumulator, Echelon, LinearSystem, Matrix, Scalar, SparseVec};

use super::{Algebra, AlgebraError};

/// Multiplier as a compatible pair of operators: `left(x) = m·x`,
/// `right(x) = x·m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multiplier {
    pub left: Matrix,
    pub right: Matrix,
}

/// Which multiplier law failed, with the basis pair where it failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplierViolation {
    /// `left(a·b) ≠ left(a)·b`
    LeftModule(usize, usize),
    /// `right(a·b) ≠ a·right(b)`
    RightModule(usize, usize),
    /// `a·left(b) ≠ right(a)·b`
    Compatibility(usize, usize),
    Shape,
}

impl std::fmt::Display for MultiplierViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MultiplierViolation::LeftModule(a, b) => write!(f, "left(ab) != left(a)b at basis pair ({a},{b})"),
            MultiplierViolation::RightModule(a, b) => write!(f, "right(ab) != a right(b) at basis pair ({a},{b})"),
            MultiplierViolation::Compatibility(a, b) => write!(f, "a left(b) != right(a) b at basis pair ({a},{b})"),
            MultiplierViolation::Shape => write!(f, "operator shapes do not match the algebra"),
        }
    }
}

impl Multiplier {
    pub fn new(left: Matrix, right: Matrix) -> Self {
        Multiplier { left, right }
    }

    pub fn identity(n: usize) -> Self {
        Multiplier {
            left: Matrix::identity(n),
            right: Matrix::identity(n),
        }
    }

    pub fn from_element(alg: &Algebra, x: &[Scalar]) -> Self {
        Multiplier {
            left: alg.mult_operator_left(x),
            right: alg.mult_operator_right(x),
        }
    }

    pub fn from_basis(alg: &Algebra, i: usize) -> Self {
        Multiplier {
            left: alg.left_ops()[i].clone(),
            right: alg.right_ops()[i].clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.left.rows()
    }

    /// `(L, R)·(L', R') = (L∘L', R'∘R)`.
    pub fn product(&self, o: &Multiplier) -> Multiplier {
        Multiplier {
            left: self.left.mul(&o.left),
            right: o.right.mul(&self.right),
        }
    }

    pub fn add(&self, o: &Multiplier) -> Multiplier {
        Multiplier {
            left: self.left.add(&o.left),
            right: self.right.add(&o.right),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Multiplier {
        Multiplier {
            left: self.left.scale(c),
            right: self.right.scale(c),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.left.is_idempotent() && self.right.is_idempotent()
    }

    pub fn violation(&self, alg: &Algebra) -> Option<MultiplierViolation> {
        let n = alg.dim();
        if self.left.rows() != n || !self.left.is_square() || self.right.rows() != n || !self.right.is_square() {
            return Some(MultiplierViolation::Shape);
        }
        let lc = self.left.sparse_cols();
        let rc = self.right.sparse_cols();
        let apply = |cols: &[SparseVec], v: &SparseVec| {
            let mut acc = Accumulator::new();
            for (j, c) in v.iter() {
                acc.add_vec(c, &cols[*j]);
            }
            acc.finish()
        };
        for a in 0..n {
            for b in 0..n {
                let ab = alg.product(a, b);
                if apply(&lc, ab) != alg.mul_sparse(&lc[a], &SparseVec::unit(b)) {
                    return Some(MultiplierViolation::LeftModule(a, b));
                }
                if apply(&rc, ab) != alg.mul_sparse(&SparseVec::unit(a), &rc[b]) {
                    return Some(MultiplierViolation::RightModule(a, b));
                }
                if alg.mul_sparse(&SparseVec::unit(a), &lc[b]) != alg.mul_sparse(&rc[a], &SparseVec::unit(b)) {
                    return Some(MultiplierViolation::Compatibility(a, b));
                }
            }
        }
        None
    }
}

pub(crate) fn flatten_matrix(m: &Matrix) -> SparseVec {
    let c = m.cols();
    SparseVec::from_entries(m.nonzeros().into_iter().map(|(r, k, v)| (r * c + k, v.clone())))
}

/// Basis of `M(A)` together with coordinate extraction.
#[derive(Clone, Debug)]
pub struct MultiplierAlgebra {
    n: usize,
    basis: Vec<Multiplier>,
    coords: Echelon,
    embedding: Vec<Vec<Scalar>>,
    unit: Vec<Scalar>,
    unital: bool,
}

impl MultiplierAlgebra {
    /// `M(A)`; uses `M(A) = A` when `A` is unital and otherwise solves the
    /// multiplier constraint system.
    pub fn new(alg: &Algebra) -> Result<Self, AlgebraError> {
        if alg.left_annihilator().is_some() || alg.right_annihilator().is_some() {
            return Err(AlgebraError::DegenerateProduct);
        }
        match alg.find_unit() {
            Some(_) => {
                let basis = (0..alg.dim()).map(|i| Multiplier::from_basis(alg, i)).collect();
                Ok(Self::from_basis(alg, basis, true))
            }
            None => Self::by_constraints(alg),
        }
    }

    /// `M(A)` from the linear constraint system, without the unital shortcut.
    pub fn by_constraints(alg: &Algebra) -> Result<Self, AlgebraError> {
        if alg.left_annihilator().is_some() || alg.right_annihilator().is_some() {
            return Err(AlgebraError::DegenerateProduct);
        }
        let basis = solve_multipliers(alg);
        let unital = alg.find_unit().is_some();
        Ok(Self::from_basis(alg, basis, unital))
    }

    fn from_basis(alg: &Algebra, basis: Vec<Multiplier>, unital: bool) -> Self {
        let n = alg.dim();
        let mut coords = Echelon::new(n * n);
        for (i, m) in basis.iter().enumerate() {
            coords.insert(&flatten_matrix(&m.left), &SparseVec::unit(i));
        }
        let mut out = MultiplierAlgebra {
            n,
            basis,
            coords,
            embedding: Vec::new(),
            unit: Vec::new(),
            unital,
        };
        out.embedding = (0..n)
            .map(|i| out.coords_of_left(&alg.left_ops()[i]).expect("A embeds in M(A)"))
            .collect();
        out.unit = out
            .coords_of_left(&Matrix::identity(n))
            .expect("identity is a multiplier");
        out
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.n
    }

    pub fn is_unital_algebra(&self) -> bool {
        self.unital
    }

    pub fn basis(&self) -> &[Multiplier] {
        &self.basis
    }

    /// Coordinates of `e_i` in the multiplier basis.
    pub fn embedding(&self) -> &[Vec<Scalar>] {
        &self.embedding
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Coordinates of the multiplier with the given left action, if it is one.
    pub fn coords_of_left(&self, left: &Matrix) -> Option<Vec<Scalar>> {
        let (res, tag) = self.coords.reduce(&flatten_matrix(left), &SparseVec::new());
        if !res.is_zero() {
            return None;
        }
        Some(tag.scale(&-Scalar::from_int(1)).to_dense(self.basis.len()))
    }

    /// Coordinates of `m`, checking both actions.
    pub fn coords(&self, m: &Multiplier) -> Option<Vec<Scalar>> {
        let c = self.coords_of_left(&m.left)?;
        if self.combine(&c).right != m.right {
            return None;
        }
        Some(c)
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Multiplier {
        let mut left = Matrix::zeros(self.n, self.n);
        let mut right = Matrix::zeros(self.n, self.n);
        for (c, m) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            left = left.add(&m.left.scale(c));
            right = right.add(&m.right.scale(c));
        }
        Multiplier { left, right }
    }

    /// Element `x ∈ A` with `(L_x, R_x) = m`, if `m` lies in the embedded copy of `A`.
    pub fn element_of(&self, alg: &Algebra, m: &Multiplier) -> Option<Vec<Scalar>> {
        let c = self.coords(m)?;
        let mut sys = LinearSystem::new(self.n);
        for (k, ck) in c.iter().enumerate() {
            let row = SparseVec::from_entries((0..self.n).map(|i| (i, self.embedding[i][k].clone())));
            sys.push(&row, ck);
        }
        let x = sys.solve().ok()?.particular;
        (Multiplier::from_element(alg, &x) == *m).then_some(x)
    }
}

fn solve_multipliers(alg: &Algebra) -> Vec<Multiplier> {
    let n = alg.dim();
    let nn = n * n;
    let l = |r: usize, c: usize| r * n + c;
    let r = |i: usize, j: usize| nn + i * n + j;
    let lops = alg.left_ops();
    let rops = alg.right_ops();
    let mut sys = LinearSystem::new(2 * nn);
    let zero = Scalar::zero();
    for b in 0..n {
        let rb = &rops[b];
        let lb = &lops[b];
        for i in 0..n {
            for j in 0..n {
                // (L∘R_b − R_b∘L)[i][j] = 0
                let mut row = Vec::new();
                for k in 0..n {
                    row.push((l(i, k), rb.get(k, j).clone()));
                    row.push((l(k, j), -rb.get(i, k)));
                }
                sys.push(&SparseVec::from_entries(row), &zero);
                // (R∘L_b − L_b∘R)[i][j] = 0
                let mut row = Vec::new();
                for k in 0..n {
                    row.push((r(i, k), lb.get(k, j).clone()));
                    row.push((r(k, j), -lb.get(i, k)));
                }
                sys.push(&SparseVec::from_entries(row), &zero);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            // a·L(e_b) − R(e_a)·b = 0, component i
            for i in 0..n {
                let mut row = Vec::new();
                for k in 0..n {
                    row.push((l(k, b), lops[a].get(i, k).clone()));
                    row.push((r(k, a), -rops[b].get(i, k)));
                }
                sys.push(&SparseVec::from_entries(row), &zero);
            }
        }
    }
    let sol = sys.solve().expect("homogeneous system");
    sol.space
        .basis()
        .iter()
        .map(|v| {
            let d = v.to_dense(2 * nn);
            Multiplier {
                left: Matrix::from_fn(n, n, |i, j| d[l(i, j)].clone()),
                right: Matrix::from_fn(n, n, |i, j| d[r(i, j)].clone()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: i64) -> Scalar {
        Scalar::from_int(x)
    }

    fn diagonal_algebra(n: usize) -> Algebra {
        Algebra::from_structure(n, None, (0..n).map(|i| (i, i, i, s(1)))).unwrap()
    }

    #[test]
    fn unital_multiplier_algebra_is_the_algebra() {
        let a = diagonal_algebra(4);
        let m = MultiplierAlgebra::new(&a).unwrap();
        assert_eq!(m.dim(), 4);
        let c = MultiplierAlgebra::by_constraints(&a).unwrap();
        assert_eq!(c.dim(), 4);
        for b in c.basis() {
            assert_eq!(b.violation(&a), None);
        }
    }

    #[test]
    fn degenerate_product_is_rejected() {
        let a = Algebra::from_structure(1, None, vec![]).unwrap();
        assert!(matches!(
            MultiplierAlgebra::new(&a),
            Err(AlgebraError::DegenerateProduct)
        ));
    }

    #[test]
    fn element_recovery() {
        let a = diagonal_algebra(3);
        let m = MultiplierAlgebra::new(&a).unwrap();
        let x = vec![s(2), s(0), s(-1)];
        assert_eq!(m.element_of(&a, &Multiplier::from_element(&a, &x)), Some(x));
    }

    #[test]
    fn bad_pair_is_not_a_multiplier() {
        let a = diagonal_algebra(2);
        let bad = Multiplier::new(Matrix::identity(2), Matrix::zeros(2, 2));
        assert!(matches!(
            bad.violation(&a),
            Some(MultiplierViolation::Compatibility(_, _))
        ));
    }
}
