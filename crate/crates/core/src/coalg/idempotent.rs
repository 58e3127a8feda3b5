use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactla::{Accumulator, Echelon, LinAlgError, LinearSystem, Scalar, SparseOp, SparseVec};
use crate::fdalg::MultiplierAlgebra;

use super::legs::apply_kron;
use super::{CoalgError, CoproductData, TensorMultiplier};

/// The canonical idempotent `E ∈ M(A⊗A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalIdempotent {
    /// Coefficients `c_{αβ}` (index `α·d + β`) of `E = Σ c_{αβ} m_α⊗m_β`
    /// over the basis `m_α` of `M(A)`.
    pub coeffs: Vec<Scalar>,
    pub mult_dim: usize,
    pub e: TensorMultiplier,
    /// `E` as a vector of `A⊗A` when `A` is unital.
    pub element: Option<SparseVec>,
}

impl CanonicalIdempotent {
    /// Rank of the left action.
    pub fn left_rank(&self) -> usize {
        echelon_of(&self.e.left).rank()
    }
}

pub(crate) fn echelon_of(op: &SparseOp) -> Echelon {
    let mut ech = Echelon::new(op.rows());
    for c in op.cols() {
        ech.insert_left(c);
    }
    ech
}

pub(crate) fn mult_ops(ma: &MultiplierAlgebra) -> (Vec<SparseOp>, Vec<SparseOp>) {
    let left = ma.basis().iter().map(|m| SparseOp::from_matrix(&m.left)).collect();
    let right = ma.basis().iter().map(|m| SparseOp::from_matrix(&m.right)).collect();
    (left, right)
}

/// `Σ c_{αβ} ops_α ⊗ ops_β` on `A⊗A`.
pub(crate) fn combine_kron(coeffs: &[Scalar], ops: &[SparseOp], n: usize) -> SparseOp {
    let d = ops.len();
    let mut cols = Vec::with_capacity(n * n);
    for x in 0..n * n {
        let ex = SparseVec::unit(x);
        let mut acc = Accumulator::new();
        for (ab, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc.add_vec(c, &apply_kron(&ops[ab / d], &ops[ab % d], n, &ex));
        }
        cols.push(acc.finish());
    }
    SparseOp::from_cols(n * n, cols)
}

/// Equations saying that `Σ c_{αβ} ops_α⊗ops_β` fixes `Ran` pointwise and maps into it.
fn push_projection_constraints(sys: &mut LinearSystem, ops: &[SparseOp], ran: &Echelon, n: usize) {
    let d = ops.len();
    for y in ran.basis() {
        let mut rows: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (x, _) in y.iter() {
            rows.entry(*x).or_default();
        }
        for ab in 0..d * d {
            for (x, v) in apply_kron(&ops[ab / d], &ops[ab % d], n, &y).iter() {
                rows.entry(*x).or_default().push((ab, v.clone()));
            }
        }
        for (x, r) in rows {
            sys.push(&SparseVec::from_entries(r), &y.get(x));
        }
    }
    for x in 0..n * n {
        let ex = SparseVec::unit(x);
        let mut rows: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for ab in 0..d * d {
            let w = ran.reduce_left(&apply_kron(&ops[ab / d], &ops[ab % d], n, &ex));
            for (z, v) in w.iter() {
                rows.entry(*z).or_default().push((ab, v.clone()));
            }
        }
        for (_, r) in rows {
            sys.push(&SparseVec::from_entries(r), &Scalar::zero());
        }
    }
}

/// Solves for the multiplier whose left action projects onto `Ran T1` and
/// whose right action projects onto `Ran T2`.
pub fn compute_e(c: &CoproductData, ma: &MultiplierAlgebra) -> Result<CanonicalIdempotent, CoalgError> {
    let n = c.n();
    let d = ma.dim();
    let (ml, mr) = mult_ops(ma);
    let mut sys = LinearSystem::new(d * d);
    push_projection_constraints(&mut sys, &ml, &echelon_of(c.t1()), n);
    push_projection_constraints(&mut sys, &mr, &echelon_of(c.t2()), n);
    let sol = match sys.solve() {
        Ok(s) => s,
        Err(LinAlgError::Infeasible) => return Err(CoalgError::NoSuchIdempotent),
        Err(_) => return Err(CoalgError::NoSuchIdempotent),
    };
    if !sol.is_unique() {
        return Err(CoalgError::AmbiguousE(sol.space.dim()));
    }
    let coeffs = sol.particular;
    let e = TensorMultiplier {
        left: combine_kron(&coeffs, &ml, n),
        right: combine_kron(&coeffs, &mr, n),
    };
    if !e.is_idempotent() {
        return Err(CoalgError::NotIdempotent);
    }
    let element = c.algebra().find_unit().map(|u| {
        let u = SparseVec::from_dense(&u);
        e.left.apply(&crate::exactla::kron_vec(&u, &u, n))
    });
    Ok(CanonicalIdempotent {
        coeffs,
        mult_dim: d,
        e,
        element,
    })
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;

    fn e_of(c: &CoproductData) -> CanonicalIdempotent {
        let ma = MultiplierAlgebra::new(c.algebra()).unwrap();
        compute_e(c, &ma).unwrap()
    }

    #[test]
    fn hopf_case_gives_one_tensor_one() {
        let e = e_of(&cyclic_group(3));
        assert!(e.e.left.is_identity());
        assert!(e.e.right.is_identity());
    }

    #[test]
    fn function_model_e_is_composability_indicator() {
        let e = e_of(&pair_function(2));
        assert_eq!(e.left_rank(), 8);
        let el = e.element.unwrap();
        // δ_(i,j)⊗δ_(k,l) with j = k
        let n = 4;
        let expect = SparseVec::from_entries((0..2).flat_map(|i| {
            (0..2).flat_map(move |j| (0..2).map(move |l| ((i * 2 + j) * n + (j * 2 + l), Scalar::from_int(1))))
        }));
        assert_eq!(el, expect);
    }

    #[test]
    fn convolution_model_e_is_sum_over_units() {
        let e = e_of(&pair_convolution(2));
        assert_eq!(e.left_rank(), 8);
        let expect = SparseVec::from_entries(vec![(0, Scalar::from_int(1)), (15, Scalar::from_int(1))]);
        assert_eq!(e.element.unwrap(), expect);
    }
}
