use crate::coalg::legs::{apply_pair, basis3};
use crate::coalg::{compare_ops, CoproductData, Outcome, Preimage, ProjectionMaps, TensorMultiplier, Violation};
use crate::exactla::{generalized_inverse, SparseOp};

use super::AntipodeError;

/// `R1` with `T1R1 = E`, `R1T1 = G1` and `R2` with `T2R2 = E` (right
/// action), `R2T2 = G2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedInverses {
    pub r1: SparseOp,
    pub r2: SparseOp,
}

fn check_inverse(i: usize, t: &SparseOp, r: &SparseOp, e: &SparseOp, g: &SparseOp, n: usize) -> Outcome {
    compare_ops(&format!("T{i}R{i} = E"), &t.compose(r), e, n, 2)?;
    compare_ops(&format!("R{i}T{i} = G{i}"), &r.compose(t), g, n, 2)?;
    compare_ops(&format!("T{i}R{i}T{i} = T{i}"), &t.compose(r).compose(t), t, n, 2)?;
    compare_ops(&format!("R{i}T{i}R{i} = R{i}"), &r.compose(t).compose(r), r, n, 2)
}

/// `R = G∘P∘E` where `P` is any right inverse of `T` on its range: `TR = E`
/// because `E` projects onto the range, and `RT = G` because `PT − 1` lands
/// in `Ker T = Ran(1 − G)`.
pub fn build_generalized_inverses(
    c: &CoproductData,
    e: &TensorMultiplier,
    g: &ProjectionMaps,
) -> Result<GeneralizedInverses, AntipodeError> {
    let n = c.n();
    let p1 = Preimage::new(c.t1(), false).as_op();
    let p2 = Preimage::new(c.t2(), false).as_op();
    let r1 = g.g1.compose(&p1).compose(&e.left);
    let r2 = g.g2.compose(&p2).compose(&e.right);
    check_inverse(1, c.t1(), &r1, &e.left, &g.g1, n).map_err(AntipodeError::BadProjections)?;
    check_inverse(2, c.t2(), &r2, &e.right, &g.g2, n).map_err(AntipodeError::BadProjections)?;
    Ok(GeneralizedInverses { r1, r2 })
}

/// Recomputes `R1`, `R2` with the dense construction when `A⊗A` has at most
/// `limit` dimensions.
pub fn dense_cross_check(
    c: &CoproductData,
    e: &TensorMultiplier,
    g: &ProjectionMaps,
    r: &GeneralizedInverses,
    limit: usize,
) -> Option<Outcome> {
    let n = c.n();
    if n * n > limit {
        return None;
    }
    let run = |i: usize, t: &SparseOp, e: &SparseOp, g: &SparseOp, r: &SparseOp| -> Outcome {
        let d = generalized_inverse(&t.to_matrix(), &e.to_matrix(), &g.to_matrix())
            .map_err(|err| Violation::new(format!("dense R{i}: {err}"), vec![]))?;
        compare_ops(
            &format!("dense R{i} = sparse R{i}"),
            &SparseOp::from_matrix(&d),
            r,
            n,
            2,
        )
    };
    Some(run(1, c.t1(), &e.left, &g.g1, &r.r1).and_then(|_| run(2, c.t2(), &e.right, &g.g2, &r.r2)))
}

/// Module and comultiplication laws of `R1`, `R2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RLaws {
    /// `R1(a⊗bb') = R1(a⊗b)(1⊗b')` and `R2(a'a⊗b) = (a'⊗1)R2(a⊗b)`.
    pub module: Outcome,
    /// `(T2⊗ι)(ι⊗R1) = (ι⊗R1)(T2⊗ι)` and `(ι⊗T1)(R2⊗ι) = (R2⊗ι)(ι⊗T1)`.
    pub commute: Outcome,
}

impl RLaws {
    pub fn ok(&self) -> bool {
        self.module.is_ok() && self.commute.is_ok()
    }
}

pub fn check_r_laws(c: &CoproductData, r: &GeneralizedInverses) -> RLaws {
    let n = c.n();
    let id = SparseOp::identity(n);
    let module = (|| {
        for b in 0..n {
            let rb = id.kron(c.rmul(b));
            if r.r1.compose(&rb) != rb.compose(&r.r1) {
                return Err(Violation::new("R1(a⊗bb') = R1(a⊗b)(1⊗b')", vec![b]));
            }
            let la = c.lmul(b).kron(&id);
            if r.r2.compose(&la) != la.compose(&r.r2) {
                return Err(Violation::new("R2(a'a⊗b) = (a'⊗1)R2(a⊗b)", vec![b]));
            }
        }
        Ok(())
    })();
    let commute = (|| {
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    let x = basis3(n, a, b, d);
                    let l = apply_pair(c.t2(), n, 3, (0, 1), &apply_pair(&r.r1, n, 3, (1, 2), &x));
                    let rr = apply_pair(&r.r1, n, 3, (1, 2), &apply_pair(c.t2(), n, 3, (0, 1), &x));
                    if l != rr {
                        return Err(Violation::new("(T2⊗ι)(ι⊗R1) = (ι⊗R1)(T2⊗ι)", vec![a, b, d]));
                    }
                    let l = apply_pair(c.t1(), n, 3, (1, 2), &apply_pair(&r.r2, n, 3, (0, 1), &x));
                    let rr = apply_pair(&r.r2, n, 3, (0, 1), &apply_pair(c.t1(), n, 3, (1, 2), &x));
                    if l != rr {
                        return Err(Violation::new("(ι⊗T1)(R2⊗ι) = (R2⊗ι)(ι⊗T1)", vec![a, b, d]));
                    }
                }
            }
        }
        Ok(())
    })();
    RLaws { module, commute }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::solve;
    use super::*;
    use crate::coalg::testing::*;

    #[test]
    fn group_algebra_inverts_t_maps() {
        // Hopf case: E = 1, G = 1, so R is the inverse of T
        let s = solve(cyclic_group(3));
        assert!(s.r.r1.compose(s.c.t1()).is_identity());
        assert!(s.c.t2().compose(&s.r.r2).is_identity());
    }

    #[test]
    fn laws_and_dense_agreement() {
        for c in [pair_function(2), pair_convolution(2), cyclic_group(2)] {
            let s = solve(c);
            assert!(check_r_laws(&s.c, &s.r).ok());
            let d = dense_cross_check(&s.c, &s.wit.idempotent.e, &s.wit.g, &s.r, 100);
            assert_eq!(d, Some(Ok(())));
        }
    }

    #[test]
    fn corrupted_projection_is_rejected() {
        let s = solve(pair_function(2));
        let g = ProjectionMaps {
            g1: SparseOp::identity(16),
            g2: s.wit.g.g2.clone(),
        };
        let err = build_generalized_inverses(&s.c, &s.wit.idempotent.e, &g).unwrap_err();
        assert!(matches!(err, AntipodeError::BadProjections(_)));
    }
}
