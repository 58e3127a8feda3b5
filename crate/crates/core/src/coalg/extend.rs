use crate::exactla::{Echelon, Scalar, SparseOp, SparseVec};
use crate::fdalg::Multiplier;

use super::legs::{apply_single, decode};
use super::{compare_ops, CoalgError, CoproductData, Outcome, TensorMultiplier, Violation};

/// Linear right inverse of an operator on its range, read off from an
/// echelon form of its columns.
#[derive(Clone, Debug)]
pub struct Preimage {
    ech: Echelon,
    cols: usize,
}

impl Preimage {
    /// Columns are inserted in order, or in reverse order when `reverse`;
    /// the two choices give different preimages whenever the kernel is nonzero.
    pub fn new(op: &SparseOp, reverse: bool) -> Self {
        let mut ech = Echelon::new(op.rows());
        let order: Vec<usize> = if reverse {
            (0..op.ncols()).rev().collect()
        } else {
            (0..op.ncols()).collect()
        };
        for j in order {
            ech.insert(op.col(j), &SparseVec::unit(j));
        }
        Preimage { ech, cols: op.ncols() }
    }

    pub fn contains(&self, y: &SparseVec) -> bool {
        self.ech.contains(y)
    }

    /// `x` with `op(x) = y` for `y` in the range. Linear in `y`.
    pub fn apply(&self, y: &SparseVec) -> SparseVec {
        let (_, tag) = self.ech.reduce(y, &SparseVec::new());
        tag.scale(&-Scalar::from_int(1))
    }

    pub fn as_op(&self) -> SparseOp {
        SparseOp::from_cols(
            self.cols,
            (0..self.ech.dim()).map(|x| self.apply(&SparseVec::unit(x))).collect(),
        )
    }
}

/// Extension of `Δ` to `M(A)` with its preimage data.
#[derive(Clone, Debug)]
pub struct Extension<'a> {
    c: &'a CoproductData,
    e: &'a TensorMultiplier,
    p1: [Preimage; 2],
    p2: [Preimage; 2],
}

impl<'a> Extension<'a> {
    pub fn new(c: &'a CoproductData, e: &'a TensorMultiplier) -> Self {
        Extension {
            c,
            e,
            p1: [Preimage::new(c.t1(), false), Preimage::new(c.t1(), true)],
            p2: [Preimage::new(c.t2(), false), Preimage::new(c.t2(), true)],
        }
    }

    pub fn preimage1(&self) -> &Preimage {
        &self.p1[0]
    }

    pub fn preimage2(&self) -> &Preimage {
        &self.p2[0]
    }

    /// `Δ̃(m)`: on the left `E x = Σ T1(a_i⊗b_i) ↦ Σ T1(m a_i⊗b_i)`, on the
    /// right `x E = Σ T2(a_i⊗b_i) ↦ Σ T2(a_i⊗b_i m)`. Both preimage choices are
    /// evaluated and must agree.
    pub fn extend(&self, left_m: &SparseOp, right_m: &SparseOp) -> Result<TensorMultiplier, CoalgError> {
        let n = self.c.n();
        let nn = n * n;
        let mut left = Vec::with_capacity(nn);
        let mut right = Vec::with_capacity(nn);
        for x in 0..nn {
            let z = self.e.left.col(x);
            let cols: Vec<SparseVec> = self
                .p1
                .iter()
                .map(|p| self.c.t1().apply(&apply_single(left_m, n, 2, 0, &p.apply(z))))
                .collect();
            if cols[0] != cols[1] {
                return Err(CoalgError::IllDefinedExtension(Violation::new(
                    "left action independent of the preimage",
                    decode(n, 2, x),
                )));
            }
            left.push(cols.into_iter().next().unwrap());

            let z = self.e.right.col(x);
            let cols: Vec<SparseVec> = self
                .p2
                .iter()
                .map(|p| self.c.t2().apply(&apply_single(right_m, n, 2, 1, &p.apply(z))))
                .collect();
            if cols[0] != cols[1] {
                return Err(CoalgError::IllDefinedExtension(Violation::new(
                    "right action independent of the preimage",
                    decode(n, 2, x),
                )));
            }
            right.push(cols.into_iter().next().unwrap());
        }
        Ok(TensorMultiplier {
            left: SparseOp::from_cols(nn, left),
            right: SparseOp::from_cols(nn, right),
        })
    }

    pub fn extend_multiplier(&self, m: &Multiplier) -> Result<TensorMultiplier, CoalgError> {
        self.extend(&SparseOp::from_matrix(&m.left), &SparseOp::from_matrix(&m.right))
    }
}

pub fn extend_delta(c: &CoproductData, e: &TensorMultiplier, m: &Multiplier) -> Result<TensorMultiplier, CoalgError> {
    Extension::new(c, e).extend_multiplier(m)
}

/// `Δ̃(1) = E` and `Δ̃(a) = Δ(a)` on basis elements.
pub fn check_extension(c: &CoproductData, ext: &Extension<'_>) -> Outcome {
    let n = c.n();
    let id = SparseOp::identity(n);
    let one = ext.extend(&id, &id).map_err(|e| match e {
        CoalgError::IllDefinedExtension(v) => v,
        other => Violation::new(other.to_string(), vec![]),
    })?;
    compare_ops("Δ(1) = E (left)", &one.left, &ext.e.left, n, 2)?;
    compare_ops("Δ(1) = E (right)", &one.right, &ext.e.right, n, 2)?;
    for a in 0..n {
        let d = ext.extend(c.lmul(a), c.rmul(a)).map_err(|e| match e {
            CoalgError::IllDefinedExtension(v) => Violation::new(v.law, vec![a]),
            other => Violation::new(other.to_string(), vec![a]),
        })?;
        if d.left != *c.delta_left(a) || d.right != *c.delta_right(a) {
            return Err(Violation::new("extension restricts to Δ on A", vec![a]));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::idempotent::compute_e;
    use super::super::testing::*;
    use super::*;
    use crate::fdalg::MultiplierAlgebra;

    #[test]
    fn extension_restricts_and_sends_one_to_e() {
        for c in [pair_function(2), pair_convolution(2), cyclic_group(2)] {
            let ma = MultiplierAlgebra::new(c.algebra()).unwrap();
            let e = compute_e(&c, &ma).unwrap();
            let ext = Extension::new(&c, &e.e);
            assert_eq!(check_extension(&c, &ext), Ok(()));
        }
    }

    #[test]
    fn extension_of_unit_indicator_in_function_model() {
        // indicator of the unit (0,0), basis index 0
        let c = pair_function(2);
        let ma = MultiplierAlgebra::new(c.algebra()).unwrap();
        let e = compute_e(&c, &ma).unwrap();
        let d = extend_delta(&c, &e.e, &Multiplier::from_basis(c.algebra(), 0)).unwrap();
        // Δ̃(δ_e) is the indicator of composable (p,q) with pq = e, i.e. q = p⁻¹, t(p) = e
        let n = 4;
        let diag: Vec<usize> = (0..16).filter(|x| !d.left.col(*x).is_zero()).collect();
        // (0,0)⊗(0,0) and (0,1)⊗(1,0)
        assert_eq!(diag, vec![0, n + 2]);

        // the function p ↦ [t(p) = (0,0)] extends to the composable pairs with t(p) = (0,0)
        let f = Multiplier::from_element(c.algebra(), &[1, 1, 0, 0].map(crate::exactla::Scalar::from_int));
        let d = extend_delta(&c, &e.e, &f).unwrap();
        let support: Vec<usize> = (0..16).filter(|x| !d.left.col(*x).is_zero()).collect();
        // (0,0)⊗(0,0), (0,0)⊗(0,1), (0,1)⊗(1,0), (0,1)⊗(1,1)
        assert_eq!(support, vec![0, 1, n + 2, n + 3]);
    }

    #[test]
    fn preimages_solve_the_equation() {
        let c = pair_function(2);
        let p = Preimage::new(c.t1(), true);
        for y in c.t1().cols() {
            assert_eq!(c.t1().apply(&p.apply(y)), *y);
        }
    }
}
