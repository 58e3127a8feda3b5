use std::fmt;

use super::matrix::solve_matrix;
use super::sparse::{Echelon, Insertion, SparseVec};
use super::{LinAlgError, Matrix};

/// A violated precondition of [`generalized_inverse`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectionViolation {
    Shape(String),
    ENotIdempotent,
    FNotIdempotent,
    RangeMismatch,
    KernelMismatch,
    /// The constructed map failed `t·r = e` or `r·t = f`.
    Construction(&'static str),
}

impl fmt::Display for ProjectionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectionViolation::Shape(s) => write!(f, "shape: {s}"),
            ProjectionViolation::ENotIdempotent => write!(f, "e is not idempotent"),
            ProjectionViolation::FNotIdempotent => write!(f, "f is not idempotent"),
            ProjectionViolation::RangeMismatch => write!(f, "image(e) differs from image(t)"),
            ProjectionViolation::KernelMismatch => write!(f, "image(1-f) differs from kernel(t)"),
            ProjectionViolation::Construction(which) => write!(f, "constructed map violates {which}"),
        }
    }
}

fn check_projections(t: &Matrix, e: &Matrix, f: &Matrix) -> Vec<ProjectionViolation> {
    let mut v = Vec::new();
    if e.rows() != t.rows() || !e.is_square() {
        v.push(ProjectionViolation::Shape(format!(
            "e is {}x{} for t with {} rows",
            e.rows(),
            e.cols(),
            t.rows()
        )));
    }
    if f.rows() != t.cols() || !f.is_square() {
        v.push(ProjectionViolation::Shape(format!(
            "f is {}x{} for t with {} columns",
            f.rows(),
            f.cols(),
            t.cols()
        )));
    }
    if !v.is_empty() {
        return v;
    }
    if !e.is_idempotent() {
        v.push(ProjectionViolation::ENotIdempotent);
    }
    if !f.is_idempotent() {
        v.push(ProjectionViolation::FNotIdempotent);
    }
    if e.image() != t.image() {
        v.push(ProjectionViolation::RangeMismatch);
    }
    if Matrix::identity(f.rows()).sub(f).image() != t.kernel() {
        v.push(ProjectionViolation::KernelMismatch);
    }
    v
}

/// The unique `r` with `t·r = e`, `r·t = f` (hence `t·r·t = t`,
/// `r·t·r = r`), given that `e` projects onto the image of `t` and `1-f`
/// onto its kernel.
pub fn generalized_inverse(t: &Matrix, e: &Matrix, f: &Matrix) -> Result<Matrix, LinAlgError> {
    let violations = check_projections(t, e, f);
    if !violations.is_empty() {
        return Err(LinAlgError::BadProjections(violations));
    }
    let r = construct(t, e, f);
    let mut bad = Vec::new();
    if t.mul(&r) != *e {
        bad.push(ProjectionViolation::Construction("t·r = e"));
    }
    if r.mul(t) != *f {
        bad.push(ProjectionViolation::Construction("r·t = f"));
    }
    if !bad.is_empty() {
        return Err(LinAlgError::BadProjections(bad));
    }
    Ok(r)
}

/// r(t·ξ) = f·ξ = ξ on a basis ξ of image(f), r(1-e) = 0.
fn construct(t: &Matrix, e: &Matrix, f: &Matrix) -> Matrix {
    // Independent columns of f give a basis of image(f), a complement of kernel(t).
    let mut fe = Echelon::new(f.rows());
    let mut xi = Vec::new();
    for col in f.sparse_cols() {
        if fe.insert_left(&col) {
            xi.push(col);
        }
    }
    // Coordinates of vectors of image(t) in the basis t·ξ_j.
    let mut be = Echelon::new(t.rows());
    for (j, x) in xi.iter().enumerate() {
        let tx = t.apply_sparse(x);
        let ins = be.insert(&tx, &SparseVec::unit(j));
        debug_assert!(matches!(ins, Insertion::Independent(_)));
    }
    // r·y = Σ_pivots (e·y)[p] · Σ_j tag_p[j] ξ_j
    let mut coord_to_domain: Vec<(usize, SparseVec)> = Vec::new();
    for (p, _, tag) in be.rows() {
        let mut acc = super::sparse::Accumulator::new();
        for (j, c) in tag.iter() {
            acc.add_vec(c, &xi[*j]);
        }
        coord_to_domain.push((p, acc.finish()));
    }
    let mut r = Matrix::zeros(t.cols(), t.rows());
    for col in 0..t.rows() {
        let ey = e.col_sparse(col);
        let mut acc = super::sparse::Accumulator::new();
        for (p, img) in &coord_to_domain {
            if let Some(c) = ey.get_ref(*p) {
                acc.add_vec(c, img);
            }
        }
        for (i, c) in acc.finish().iter() {
            r.set(*i, col, c.clone());
        }
    }
    r
}

/// Independent second path: solve `r·[t | 1-e] = [f | 0]` directly and
/// demand a unique solution.
pub fn generalized_inverse_by_constraints(t: &Matrix, e: &Matrix, f: &Matrix) -> Result<Matrix, LinAlgError> {
    let violations = check_projections(t, e, f);
    if !violations.is_empty() {
        return Err(LinAlgError::BadProjections(violations));
    }
    let m = t.rows();
    let n = t.cols();
    let one_minus_e = Matrix::identity(m).sub(e);
    // Transposed system: [t | 1-e]^T · r^T = [f | 0]^T
    let lhs = Matrix::from_fn(n + m, m, |row, col| {
        if row < n {
            t.get(col, row).clone()
        } else {
            one_minus_e.get(col, row - n).clone()
        }
    });
    let rhs = Matrix::from_fn(n + m, n, |row, col| {
        if row < n {
            f.get(col, row).clone()
        } else {
            super::Scalar::default()
        }
    });
    let (rt, null) = solve_matrix(&lhs, &rhs)?;
    if !null.is_zero() {
        return Err(LinAlgError::Underdetermined(null.dim()));
    }
    Ok(rt.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_case() {
        let i = Matrix::identity(3);
        assert_eq!(generalized_inverse(&i, &i, &i).unwrap(), i);
    }

    #[test]
    fn nilpotent_case() {
        let t = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let e = Matrix::from_int_rows(&[&[1, 0], &[0, 0]]);
        let f = Matrix::from_int_rows(&[&[0, 0], &[0, 1]]);
        let r = generalized_inverse(&t, &e, &f).unwrap();
        assert_eq!(r, Matrix::from_int_rows(&[&[0, 0], &[1, 0]]));
        assert_eq!(generalized_inverse_by_constraints(&t, &e, &f).unwrap(), r);
    }

    #[test]
    fn invertible_case_is_inverse() {
        let t = Matrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let i = Matrix::identity(2);
        assert_eq!(generalized_inverse(&t, &i, &i).unwrap(), t.inverse().unwrap());
    }

    #[test]
    fn violations_are_named() {
        let t = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let e = Matrix::from_int_rows(&[&[2, 0], &[0, 0]]);
        let f = Matrix::identity(2);
        match generalized_inverse(&t, &e, &f) {
            Err(LinAlgError::BadProjections(v)) => {
                assert!(v.contains(&ProjectionViolation::ENotIdempotent));
                assert!(v.contains(&ProjectionViolation::KernelMismatch));
                assert!(!v.contains(&ProjectionViolation::RangeMismatch));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
