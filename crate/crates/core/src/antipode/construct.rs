use crate::coalg::{CoproductData, Counit, Outcome, Violation};
use crate::exactla::{Matrix, SparseOp, SparseVec};
use crate::fdalg::{Algebra, Multiplier, MultiplierAlgebra};

use super::{phi, psi, AntipodeError, GeneralizedInverses};

/// The antipode as multipliers `S(e_a)`, flattened to a matrix when every
/// `S(e_a)` lies in `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntipodeWitness {
    pub s: Vec<Multiplier>,
    pub s_matrix: Option<Matrix>,
}

impl AntipodeWitness {
    pub fn from_multipliers(alg: &Algebra, ma: &MultiplierAlgebra, s: Vec<Multiplier>) -> Self {
        let s_matrix = flatten(alg, ma, &s);
        AntipodeWitness { s, s_matrix }
    }

    /// Antipode given as a matrix on `A`.
    pub fn from_matrix(alg: &Algebra, m: &Matrix) -> Self {
        let n = alg.dim();
        let s = (0..n).map(|a| Multiplier::from_element(alg, &m.col(a))).collect();
        AntipodeWitness {
            s,
            s_matrix: Some(m.clone()),
        }
    }

    /// `x⊗y ↦ S(x)y`.
    pub fn phi(&self) -> SparseOp {
        phi(&self.s)
    }

    /// `x⊗y ↦ xS(y)`.
    pub fn psi(&self) -> SparseOp {
        psi(&self.s)
    }

    pub fn inverse_matrix(&self) -> Option<Matrix> {
        self.s_matrix.as_ref()?.inverse()
    }
}

fn flatten(alg: &Algebra, ma: &MultiplierAlgebra, s: &[Multiplier]) -> Option<Matrix> {
    let n = alg.dim();
    let mut m = Matrix::zeros(n, n);
    for (a, sa) in s.iter().enumerate() {
        let x = ma.element_of(alg, sa)?;
        for (i, v) in x.into_iter().enumerate() {
            m.set(i, a, v);
        }
    }
    Some(m)
}

/// `S1(a)b = (ε⊗ι)R1(a⊗b)` as the left action and `bS2(a) = (ι⊗ε)R2(b⊗a)`
/// as the right action, without certifying that they agree.
pub fn antipode_parts(c: &CoproductData, eps: &Counit, r: &GeneralizedInverses) -> Vec<Multiplier> {
    let n = c.n();
    (0..n)
        .map(|a| {
            let left: Vec<SparseVec> = (0..n).map(|b| eps.contract_first(r.r1.col(a * n + b), n)).collect();
            let right: Vec<SparseVec> = (0..n).map(|b| eps.contract_second(r.r2.col(b * n + a), n)).collect();
            Multiplier::new(Matrix::from_sparse_cols(n, &left), Matrix::from_sparse_cols(n, &right))
        })
        .collect()
}

/// `b(S1(a)c) = (bS2(a))c` for all basis triples.
pub fn check_compatibility(c: &CoproductData, s: &[Multiplier]) -> Outcome {
    let n = c.n();
    let alg = c.algebra();
    for (a, sa) in s.iter().enumerate() {
        let lc = sa.left.sparse_cols();
        let rc = sa.right.sparse_cols();
        for b in 0..n {
            for x in 0..n {
                let l = alg.mul_sparse(&SparseVec::unit(b), &lc[x]);
                let r = alg.mul_sparse(&rc[b], &SparseVec::unit(x));
                if l != r {
                    return Err(Violation::new("b(S1(a)c) = (bS2(a))c", vec![a, b, x]));
                }
            }
        }
    }
    Ok(())
}

pub fn compute_antipode(
    c: &CoproductData,
    eps: &Counit,
    r: &GeneralizedInverses,
    ma: &MultiplierAlgebra,
) -> Result<AntipodeWitness, AntipodeError> {
    let s = antipode_parts(c, eps, r);
    check_compatibility(c, &s).map_err(AntipodeError::AntipodesDisagree)?;
    for (a, sa) in s.iter().enumerate() {
        if sa.violation(c.algebra()).is_some() {
            return Err(AntipodeError::NotAMultiplier(a));
        }
    }
    Ok(AntipodeWitness::from_multipliers(c.algebra(), ma, s))
}

/// Identity matrix test for `S·S'`.
pub(crate) fn is_inverse_pair(s: &Matrix, t: &Matrix) -> bool {
    s.mul(t).is_identity() && t.mul(s).is_identity()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::solve;
    use super::*;
    use crate::coalg::testing::*;
    use crate::exactla::Scalar;

    fn scalar_matrix(rows: &[&[i64]]) -> Matrix {
        Matrix::from_int_rows(rows)
    }

    /// Inversion on the pair groupoid on `k` points with ids `i·k + j`.
    fn pair_inversion(k: usize) -> Matrix {
        let n = k * k;
        Matrix::from_fn(n, n, |r, c| Scalar::from_int(((c % k) * k + c / k == r) as i64))
    }

    #[test]
    fn function_model_antipode_is_inversion() {
        let s = solve(pair_function(2));
        assert_eq!(s.s.s_matrix, Some(pair_inversion(2)));
    }

    #[test]
    fn convolution_model_antipode_is_inversion() {
        let s = solve(pair_convolution(3));
        assert_eq!(s.s.s_matrix, Some(pair_inversion(3)));
    }

    #[test]
    fn group_of_order_two_has_identity_antipode() {
        let s = solve(cyclic_group(2));
        assert!(s.s.s_matrix.unwrap().is_identity());
        let s = solve(cyclic_group(3));
        // g ↦ g⁻¹
        assert_eq!(s.s.s_matrix, Some(scalar_matrix(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]])));
    }

    #[test]
    fn mismatched_halves_are_detected() {
        let s = solve(pair_convolution(2));
        let mut parts = s.s.s.clone();
        parts[1].right = parts[2].right.clone();
        assert!(check_compatibility(&s.c, &parts).is_err());
    }
}
