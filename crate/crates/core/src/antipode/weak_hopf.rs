use crate::coalg::legs::tensor_mul;
use crate::coalg::{CoproductData, Counit, Outcome, Violation, WmhaWitness};
use crate::exactla::{kron_vec, Scalar, SparseVec};

use super::{compare_tm, e_from_element, SourceTarget};

/// Outcome of the weak Hopf algebra test, which only applies to unital `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakHopfOutcome {
    pub unital: bool,
    pub reason: Option<String>,
    /// `E = Δ(1)` as multipliers.
    pub e_is_delta_one: Option<Outcome>,
    /// `ε(abc) = Σ ε(ab(2))ε(b(1)c)`.
    pub weak_mult: Option<Outcome>,
    /// `ε(abc) = Σ ε(ab(1))ε(b(2)c)`.
    pub weak_mult_op: Option<Outcome>,
    /// `ε_t(a) = (ε⊗ι)(Δ(1)(a⊗1))` and `ε_s(a) = (ι⊗ε)((1⊗a)Δ(1))`.
    pub counit_formulas: Option<Outcome>,
    pub weak_hopf: bool,
    pub hopf: bool,
}

fn weak_mult(c: &CoproductData, eps: &Counit, unit: &SparseVec, second: bool) -> Outcome {
    let n = c.n();
    let alg = c.algebra();
    let p: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| eps.apply(alg.product(i, j))).collect())
        .collect();
    for b in 0..n {
        let db = c.t1().apply(&kron_vec(&SparseVec::unit(b), unit, n));
        for a in 0..n {
            let ab = alg.product(a, b);
            for cc in 0..n {
                let lhs = eps.apply(&alg.mul_sparse(ab, &SparseVec::unit(cc)));
                let mut rhs = Scalar::from_int(0);
                for (ij, v) in db.iter() {
                    let (i, j) = (ij / n, ij % n);
                    let t = if second {
                        &p[a][i] * &p[j][cc]
                    } else {
                        &p[i][cc] * &p[a][j]
                    };
                    rhs += &(v * &t);
                }
                if lhs != rhs {
                    let law = if second {
                        "ε(abc) = Σ ε(ab(1))ε(b(2)c)"
                    } else {
                        "ε(abc) = Σ ε(ab(2))ε(b(1)c)"
                    };
                    return Err(Violation::new(law, vec![a, b, cc]));
                }
            }
        }
    }
    Ok(())
}

fn counit_formulas(c: &CoproductData, eps: &Counit, st: &SourceTarget, unit: &SparseVec, d1: &SparseVec) -> Outcome {
    let n = c.n();
    let alg = c.algebra();
    for a in 0..n {
        let ea = SparseVec::unit(a);
        let lhs = eps.contract_first(&tensor_mul(alg, 2, d1, &kron_vec(&ea, unit, n)), n);
        if lhs != st.eps_t[a].left.apply_sparse(unit) {
            return Err(Violation::new("ε_t(a) = (ε⊗ι)(Δ(1)(a⊗1))", vec![a]));
        }
        let lhs = eps.contract_second(&tensor_mul(alg, 2, &kron_vec(unit, &ea, n), d1), n);
        if lhs != st.eps_s[a].left.apply_sparse(unit) {
            return Err(Violation::new("ε_s(a) = (ι⊗ε)((1⊗a)Δ(1))", vec![a]));
        }
    }
    Ok(())
}

/// Weak Hopf algebra test for unital `A`: `E = Δ(1)`, weak
/// multiplicativity of the counit in both orders and the counital maps.
pub fn classify_weak_hopf(c: &CoproductData, wit: &WmhaWitness, st: &SourceTarget) -> WeakHopfOutcome {
    let n = c.n();
    let unit = if wit.multipliers.is_unital_algebra() {
        c.algebra().find_unit()
    } else {
        None
    };
    let Some(unit) = unit else {
        return WeakHopfOutcome {
            unital: false,
            reason: Some("non-unital".into()),
            e_is_delta_one: None,
            weak_mult: None,
            weak_mult_op: None,
            counit_formulas: None,
            weak_hopf: false,
            hopf: false,
        };
    };
    let unit = SparseVec::from_dense(&unit);
    let eps = &wit.counit;
    let e = &wit.idempotent.e;
    let d1 = c.t1().apply(&kron_vec(&unit, &unit, n));
    let e_is_delta_one = compare_tm("E = Δ(1)", e, &e_from_element(c.algebra(), &d1), n);
    let split = weak_mult(c, eps, &unit, false);
    let split_op = weak_mult(c, eps, &unit, true);
    let formulas = counit_formulas(c, eps, st, &unit, &d1);
    let weak_hopf = e_is_delta_one.is_ok() && split.is_ok() && split_op.is_ok() && formulas.is_ok();
    let hopf = weak_hopf && e.left.is_identity() && e.right.is_identity();
    let reason = (!weak_hopf).then(|| {
        [&e_is_delta_one, &split, &split_op, &formulas]
            .into_iter()
            .find_map(|o| o.as_ref().err())
            .map(|v| v.to_string())
            .unwrap_or_default()
    });
    WeakHopfOutcome {
        unital: true,
        reason,
        e_is_delta_one: Some(e_is_delta_one),
        weak_mult: Some(split),
        weak_mult_op: Some(split_op),
        counit_formulas: Some(formulas),
        weak_hopf,
        hopf,
    }
}

#[cfg(test)]
mod tests {
    use super::super::compute_source_target;
    use super::super::fixtures::solve;
    use super::*;
    use crate::coalg::testing::*;

    fn classify(c: CoproductData) -> WeakHopfOutcome {
        let s = solve(c);
        let st = compute_source_target(&s.c, &s.wit.multipliers, &s.r, &s.s).unwrap();
        classify_weak_hopf(&s.c, &s.wit, &st)
    }

    #[test]
    fn finite_groupoid_models_are_weak_hopf() {
        let o = classify(pair_function(2));
        assert!(o.weak_hopf && !o.hopf, "{o:?}");
        let o = classify(pair_convolution(2));
        assert!(o.weak_hopf && !o.hopf, "{o:?}");
    }

    #[test]
    fn group_algebra_is_hopf() {
        let o = classify(cyclic_group(3));
        assert!(o.weak_hopf && o.hopf);
    }
}
