use crate::coalg::{compare_ops, CoproductData, Outcome, Violation, WmhaWitness};
use crate::exactla::SparseOp;
use crate::fdalg::StarStructure;

use super::{sp, RegularSuite};

/// Compatibility of a star structure with the coproduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarChecks {
    /// The star is an involutive anti-automorphism of `A`.
    pub structure: Outcome,
    /// `Δ(a*) = Δ(a)*`, as `T3(x*) = T1(x)*` and `T4(x*) = T2(x)*`.
    pub delta_star: Outcome,
    /// `S(S(a)*)* = a`.
    pub involution: Outcome,
    /// `E* = E`.
    pub e_self_adjoint: Outcome,
    /// `G1(x)* = G3(x*)` and `G2(x)* = G4(x*)`.
    pub f_adjoints: Outcome,
}

impl StarChecks {
    pub fn ok(&self) -> bool {
        self.structure.is_ok()
            && self.delta_star.is_ok()
            && self.involution.is_ok()
            && self.e_self_adjoint.is_ok()
            && self.f_adjoints.is_ok()
    }
}

/// `X ↦ W conj(X) conj(W)`: the operator `x ↦ X(x*)*`.
fn adjoint(x: &SparseOp, w: &SparseOp, w_conj: &SparseOp) -> SparseOp {
    w.compose(&x.conj()).compose(w_conj)
}

/// Star checks need a regular antipode, so they take the regular suite.
pub fn check_star_compat(c: &CoproductData, wit: &WmhaWitness, reg: &RegularSuite, star: &StarStructure) -> StarChecks {
    let n = c.n();
    let diag = star.validate(c.algebra());
    let structure = if !diag.involutive {
        Err(Violation::new("(a*)* = a", vec![]))
    } else if let Some((a, b)) = diag.anti_multiplicative_failure {
        Err(Violation::new("(ab)* = b*a*", vec![a, b]))
    } else {
        Ok(())
    };
    if structure.is_err() {
        let skipped = || Err(Violation::new("star structure is invalid", vec![]));
        return StarChecks {
            structure,
            delta_star: skipped(),
            involution: skipped(),
            e_self_adjoint: skipped(),
            f_adjoints: skipped(),
        };
    }
    let j = sp(&star.matrix);
    let jc = sp(&star.matrix.conj());
    let w = j.kron(&j);
    let wc = jc.kron(&jc);

    let delta_star = compare_ops(
        "Δ(a*) = Δ(a)* (T3)",
        &reg.t3.compose(&w),
        &w.compose(&c.t1().conj()),
        n,
        2,
    )
    .and_then(|_| {
        compare_ops(
            "Δ(a*) = Δ(a)* (T4)",
            &reg.t4.compose(&w),
            &w.compose(&c.t2().conj()),
            n,
            2,
        )
    });

    let s = sp(&reg.s_matrix);
    let involution = compare_ops(
        "S(S(a)*)* = a",
        &adjoint(&s, &j, &jc).compose(&s),
        &SparseOp::identity(n),
        n,
        1,
    );

    let e = &wit.idempotent.e;
    let e_self_adjoint = compare_ops("E* = E (left)", &adjoint(&e.right, &w, &wc), &e.left, n, 2)
        .and_then(|_| compare_ops("E* = E (right)", &adjoint(&e.left, &w, &wc), &e.right, n, 2));

    let f_adjoints = compare_ops("G1(x)* = G3(x*)", &adjoint(reg.f.g1(), &w, &wc), reg.f.g3(), n, 2)
        .and_then(|_| compare_ops("G2(x)* = G4(x*)", &adjoint(reg.f.g2(), &w, &wc), reg.f.g4(), n, 2));

    StarChecks {
        structure,
        delta_star,
        involution,
        e_self_adjoint,
        f_adjoints,
    }
}

#[cfg(test)]
mod tests {
    use super::super::classify_regular;
    use super::super::fixtures::solve;
    use super::*;
    use crate::coalg::testing::*;
    use crate::exactla::{Matrix, Scalar};

    #[test]
    fn function_model_with_conjugation_is_compatible() {
        let s = solve(pair_function(2));
        let reg = classify_regular(&s.c, &s.wit, &s.r, &s.s).suite.unwrap();
        let st = check_star_compat(&s.c, &s.wit, &reg, &StarStructure::coefficient_conjugation(4));
        assert!(st.ok(), "{st:?}");
    }

    #[test]
    fn convolution_model_star_is_inversion() {
        let s = solve(pair_convolution(2));
        let reg = classify_regular(&s.c, &s.wit, &s.r, &s.s).suite.unwrap();
        let j = Matrix::from_fn(4, 4, |r, c| Scalar::from_int(((c % 2) * 2 + c / 2 == r) as i64));
        let st = check_star_compat(&s.c, &s.wit, &reg, &StarStructure::new(j));
        assert!(st.ok(), "{st:?}");
        // plain conjugation is not anti-multiplicative on matrix units
        let st = check_star_compat(&s.c, &s.wit, &reg, &StarStructure::coefficient_conjugation(4));
        assert!(st.structure.is_err());
    }
}
