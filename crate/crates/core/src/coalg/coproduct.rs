use crate::exactla::{Accumulator, SparseVec, Subspace};

use super::legs::{apply_pair, apply_single, basis3};
use super::{CoproductData, Outcome, Violation};

/// Result of [`validate_coproduct`], one entry per law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductDiagnostics {
    pub right_module: Outcome,
    pub left_module: Outcome,
    pub mixed: Outcome,
    pub homomorphism: Outcome,
    pub coassociativity: Outcome,
    /// Consistency of supplied `T3`, `T4` with `T1`, `T2`; `None` when absent.
    pub regular_maps: Option<Outcome>,
}

impl CoproductDiagnostics {
    pub fn ok(&self) -> bool {
        self.right_module.is_ok()
            && self.left_module.is_ok()
            && self.mixed.is_ok()
            && self.homomorphism.is_ok()
            && self.coassociativity.is_ok()
            && self.regular_maps.as_ref().map_or(true, |r| r.is_ok())
    }

    pub fn first_failure(&self) -> Option<&Violation> {
        [
            &self.right_module,
            &self.left_module,
            &self.mixed,
            &self.homomorphism,
            &self.coassociativity,
        ]
        .into_iter()
        .chain(self.regular_maps.as_ref())
        .find_map(|r| r.as_ref().err())
    }
}

/// `T(e_a ⊗ x)` for `x ∈ A`.
fn apply_first_basis(c: &CoproductData, t: &crate::exactla::SparseOp, a: usize, x: &SparseVec) -> SparseVec {
    let n = c.n();
    let mut acc = Accumulator::new();
    for (k, v) in x.iter() {
        acc.add_vec(v, t.col(a * n + k));
    }
    acc.finish()
}

/// `T(x ⊗ e_b)` for `x ∈ A`.
fn apply_second_basis(c: &CoproductData, t: &crate::exactla::SparseOp, x: &SparseVec, b: usize) -> SparseVec {
    let n = c.n();
    let mut acc = Accumulator::new();
    for (k, v) in x.iter() {
        acc.add_vec(v, t.col(k * n + b));
    }
    acc.finish()
}

pub fn validate_coproduct(c: &CoproductData) -> CoproductDiagnostics {
    let n = c.n();
    let alg = c.algebra();
    let t1 = c.t1();
    let t2 = c.t2();

    let right_module = (|| {
        for a in 0..n {
            for b in 0..n {
                for b2 in 0..n {
                    let lhs = apply_first_basis(c, t1, a, alg.product(b, b2));
                    let rhs = apply_single(c.rmul(b2), n, 2, 1, t1.col(a * n + b));
                    if lhs != rhs {
                        return Err(Violation::new("T1(a⊗bb') = T1(a⊗b)(1⊗b')", vec![a, b, b2]));
                    }
                }
            }
        }
        Ok(())
    })();

    let left_module = (|| {
        for a2 in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let lhs = apply_second_basis(c, t2, alg.product(a2, a), b);
                    let rhs = apply_single(c.lmul(a2), n, 2, 0, t2.col(a * n + b));
                    if lhs != rhs {
                        return Err(Violation::new("T2(a'a⊗b) = (a'⊗1)T2(a⊗b)", vec![a2, a, b]));
                    }
                }
            }
        }
        Ok(())
    })();

    let mixed = (|| {
        for a2 in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let lhs = apply_single(c.lmul(a2), n, 2, 0, t1.col(a * n + b));
                    let rhs = apply_single(c.rmul(b), n, 2, 1, t2.col(a2 * n + a));
                    if lhs != rhs {
                        return Err(Violation::new("(a'⊗1)T1(a⊗b) = T2(a'⊗a)(1⊗b)", vec![a2, a, b]));
                    }
                }
            }
        }
        Ok(())
    })();

    let homomorphism = (|| {
        for a in 0..n {
            for a2 in 0..n {
                for b in 0..n {
                    let lhs = apply_second_basis(c, t1, alg.product(a, a2), b);
                    let rhs = c.delta_left(a).apply(t1.col(a2 * n + b));
                    if lhs != rhs {
                        return Err(Violation::new("T1(aa'⊗b) = Δ(a)T1(a'⊗b)", vec![a, a2, b]));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for b2 in 0..n {
                    let lhs = apply_first_basis(c, t2, a, alg.product(b, b2));
                    let rhs = c.delta_right(b2).apply(t2.col(a * n + b));
                    if lhs != rhs {
                        return Err(Violation::new("T2(a⊗bb') = T2(a⊗b)Δ(b')", vec![a, b, b2]));
                    }
                }
            }
        }
        Ok(())
    })();

    let coassociativity = (|| {
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    let x = basis3(n, a, b, d);
                    let lhs = apply_pair(t1, n, 3, (1, 2), &apply_pair(t2, n, 3, (0, 1), &x));
                    let rhs = apply_pair(t2, n, 3, (0, 1), &apply_pair(t1, n, 3, (1, 2), &x));
                    if lhs != rhs {
                        return Err(Violation::new("(ι⊗T1)(T2⊗ι) = (T2⊗ι)(ι⊗T1)", vec![a, b, d]));
                    }
                }
            }
        }
        Ok(())
    })();

    let regular_maps = match (c.t3(), c.t4()) {
        (None, None) => None,
        (t3, t4) => Some((|| {
            for a in 0..n {
                for b in 0..n {
                    for x in 0..n {
                        if let Some(t3) = t3 {
                            // (c⊗1)(1⊗b)Δ(a) = (1⊗b)((c⊗1)Δ(a))
                            let lhs = apply_single(c.lmul(x), n, 2, 0, t3.col(a * n + b));
                            let rhs = apply_single(c.lmul(b), n, 2, 1, t2.col(x * n + a));
                            if lhs != rhs {
                                return Err(Violation::new("(c⊗1)T3(a⊗b) = (1⊗b)T2(c⊗a)", vec![a, b, x]));
                            }
                        }
                        if let Some(t4) = t4 {
                            let lhs = apply_single(c.rmul(x), n, 2, 1, t4.col(a * n + b));
                            let rhs = apply_single(c.rmul(a), n, 2, 0, t1.col(b * n + x));
                            if lhs != rhs {
                                return Err(Violation::new("T4(a⊗b)(1⊗c) = T1(b⊗c)(a⊗1)", vec![a, b, x]));
                            }
                        }
                    }
                }
            }
            Ok(())
        })()),
    };

    CoproductDiagnostics {
        right_module,
        left_module,
        mixed,
        homomorphism,
        coassociativity,
        regular_maps,
    }
}

/// Leg spans of the coproduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fullness {
    /// Span of the first legs of `Δ(a)(1⊗b)`.
    pub v: Subspace,
    /// Span of the second legs of `(a⊗1)Δ(b)`.
    pub w: Subspace,
}

impl Fullness {
    pub fn full(&self) -> bool {
        self.v.is_full() && self.w.is_full()
    }
}

pub fn check_fullness(c: &CoproductData) -> Fullness {
    let n = c.n();
    let mut first = Vec::new();
    for y in c.t1().cols() {
        // columns of y reshaped as an n×n matrix
        let mut parts: Vec<Vec<(usize, crate::exactla::Scalar)>> = vec![Vec::new(); n];
        for (ij, v) in y.iter() {
            parts[ij % n].push((ij / n, v.clone()));
        }
        first.extend(parts.into_iter().filter(|p| !p.is_empty()).map(SparseVec::from_entries));
    }
    let mut second = Vec::new();
    for y in c.t2().cols() {
        let mut parts: Vec<Vec<(usize, crate::exactla::Scalar)>> = vec![Vec::new(); n];
        for (ij, v) in y.iter() {
            parts[ij / n].push((ij % n, v.clone()));
        }
        second.extend(parts.into_iter().filter(|p| !p.is_empty()).map(SparseVec::from_entries));
    }
    Fullness {
        v: c.algebra().span_of(first),
        w: c.algebra().span_of(second),
    }
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;
    use crate::exactla::SparseOp;

    #[test]
    fn model_coproducts_validate() {
        for c in [cyclic_group(3), pair_convolution(2), pair_function(2)] {
            let d = validate_coproduct(&c);
            assert!(d.ok(), "{:?}", d.first_failure());
            assert!(d.regular_maps.is_none());
            assert!(check_fullness(&c).full());
        }
    }

    #[test]
    fn perturbed_t1_is_caught() {
        let c = pair_convolution(2);
        let mut cols = c.t1().cols().to_vec();
        cols[5] = cols[5].add(&SparseVec::unit(0));
        let bad = c.with_t1(SparseOp::from_cols(16, cols));
        let d = validate_coproduct(&bad);
        assert!(!d.ok());
    }

    #[test]
    fn zero_coproduct_is_not_full() {
        let c = pair_function(2);
        let z = super::super::CoproductData::new(
            c.algebra().clone(),
            SparseOp::zero(16, 16),
            SparseOp::zero(16, 16),
            None,
            None,
        )
        .unwrap();
        let f = check_fullness(&z);
        assert!(f.v.is_zero());
        assert!(!f.full());
    }
}
