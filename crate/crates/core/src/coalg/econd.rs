use rayon::prelude::*;

use crate::exactla::{SparseOp, SparseVec};

use super::extend::Preimage;
use super::legs::apply_pair;
use super::{compare_ops, CoproductData, Outcome, TensorMultiplier};

/// Conditions on `E` in `M(A⊗A⊗A)`, each compared as left actions on `A^{⊗3}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EConditions {
    /// `(E⊗1)(1⊗E) = (1⊗E)(E⊗1)`
    pub commute: Outcome,
    /// `(Δ⊗ι)(E) = (E⊗1)(1⊗E)`
    pub delta_first: Outcome,
    /// `(ι⊗Δ)(E) = (E⊗1)(1⊗E)`
    pub delta_second: Outcome,
    /// `(Δ⊗ι)(E)` is below `E⊗1` and `1⊗E`.
    pub below: Outcome,
}

impl EConditions {
    pub fn ok(&self) -> bool {
        self.commute.is_ok() && self.delta_first.is_ok() && self.delta_second.is_ok() && self.below.is_ok()
    }
}

fn op3<F: Fn(&SparseVec) -> SparseVec + Sync>(n: usize, f: F) -> SparseOp {
    let n3 = n * n * n;
    let cols: Vec<SparseVec> = (0..n3).into_par_iter().map(|x| f(&SparseVec::unit(x))).collect();
    SparseOp::from_cols(n3, cols)
}

pub fn check_e_conditions(c: &CoproductData, e: &TensorMultiplier, p1: &Preimage) -> EConditions {
    let n = c.n();
    let el = &e.left;
    let p = p1.as_op();
    let t1 = c.t1();

    let e12 = op3(n, |y| apply_pair(el, n, 3, (0, 1), y));
    let e23 = op3(n, |y| apply_pair(el, n, 3, (1, 2), y));
    let prod = e12.compose(&e23);
    let commute = compare_ops("(E⊗1)(1⊗E) = (1⊗E)(E⊗1)", &prod, &e23.compose(&e12), n, 3);

    // (E⊗1)y = Σ T1(a_i⊗b_i)⊗u_i  ↦  Σ T1(e'a_i⊗b_i)⊗e''u_i
    let first = op3(n, |y| {
        let z = apply_pair(&p, n, 3, (0, 1), &apply_pair(el, n, 3, (0, 1), y));
        apply_pair(t1, n, 3, (0, 1), &apply_pair(el, n, 3, (0, 2), &z))
    });
    // (1⊗E)y = Σ u_i⊗T1(a_i⊗b_i)  ↦  Σ e'u_i⊗T1(e''a_i⊗b_i)
    let second = op3(n, |y| {
        let z = apply_pair(&p, n, 3, (1, 2), &apply_pair(el, n, 3, (1, 2), y));
        apply_pair(t1, n, 3, (1, 2), &apply_pair(el, n, 3, (0, 1), &z))
    });
    let delta_first = compare_ops("(Δ⊗ι)(E) = (E⊗1)(1⊗E)", &first, &prod, n, 3);
    let delta_second = compare_ops("(ι⊗Δ)(E) = (E⊗1)(1⊗E)", &second, &prod, n, 3);

    let below = (|| {
        compare_ops("(E⊗1)(Δ⊗ι)(E) = (Δ⊗ι)(E)", &e12.compose(&first), &first, n, 3)?;
        compare_ops("(Δ⊗ι)(E)(E⊗1) = (Δ⊗ι)(E)", &first.compose(&e12), &first, n, 3)?;
        compare_ops("(1⊗E)(Δ⊗ι)(E) = (Δ⊗ι)(E)", &e23.compose(&first), &first, n, 3)?;
        compare_ops("(Δ⊗ι)(E)(1⊗E) = (Δ⊗ι)(E)", &first.compose(&e23), &first, n, 3)
    })();

    EConditions {
        commute,
        delta_first,
        delta_second,
        below,
    }
}

/// `Δ13(a)(1⊗b⊗x)` for basis `a`, `b`, `x`: `T1(a⊗x)` in legs 1, 3 with `b` in leg 2.
pub fn delta13_left(c: &CoproductData, a: usize, b: usize, x: usize) -> SparseVec {
    let n = c.n();
    super::legs::place(c.t1().col(a * n + x), n, (0, 2), b)
}

/// `(y⊗b⊗1)Δ13(a)` for basis `y`, `b`, `a`.
pub fn delta13_right(c: &CoproductData, y: usize, b: usize, a: usize) -> SparseVec {
    let n = c.n();
    super::legs::place(c.t2().col(y * n + a), n, (0, 2), b)
}

#[cfg(test)]
mod tests {
    use super::super::idempotent::compute_e;
    use super::super::testing::*;
    use super::*;
    use crate::fdalg::MultiplierAlgebra;

    #[test]
    fn model_idempotents_satisfy_the_conditions() {
        for c in [pair_function(2), pair_convolution(2), cyclic_group(3)] {
            let ma = MultiplierAlgebra::new(c.algebra()).unwrap();
            let e = compute_e(&c, &ma).unwrap();
            let d = check_e_conditions(&c, &e.e, &Preimage::new(c.t1(), false));
            assert!(d.ok(), "{d:?}");
        }
    }

    #[test]
    fn delta13_in_function_model() {
        // Δ13(f)(1⊗g⊗h)(p,q,v) = f(pv)g(q)h(v)
        let c = pair_function(2);
        let v = delta13_left(&c, 0, 3, 0);
        // f = δ_(0,0), h = δ_(0,0): pv = (0,0) with v = (0,0) forces p = (0,0)
        assert_eq!(v, SparseVec::unit(super::super::legs::encode(4, &[0, 3, 0])));
    }
}
