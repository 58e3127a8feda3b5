use crate::coalg::{compare_ops, verify_wmha, CoproductData, Outcome, TensorMultiplier, Violation, WmhaWitness};
use crate::fdalg::Multiplier;

use super::{
    anti_transport, antipode_on_multiplier, combine_mults, compare_mult, compare_tm, flip_op, sp, tensor_one_left,
    tensor_one_right, verify_via_antipode, AntipodeWitness, RegularSuite, SourceTarget,
};

/// Further consequences of the antipode; those needing a bijective
/// antipode are `None` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppendixChecks {
    /// `Σ S(x(1))x(2)y` absorbs `E` on the left leg: `Φ∘E = Φ` and `Ψ∘E = Ψ`.
    pub counit_leg: Outcome,
    /// `S∘ε_t = ε_s∘S` and `S∘ε_s = ε_t∘S`.
    pub antipode_source_target: Option<Outcome>,
    /// `E(y⊗1) = E(1⊗S(y))` for `y ∈ ε_s(A)`, `(1⊗x)E = (S(x)⊗1)E` for `x ∈ ε_t(A)`.
    pub leg_exchange: Option<Outcome>,
    /// `σ(S⊗S)E = E`.
    pub e_prime: Option<Outcome>,
    /// The opposite presentation verifies directly and through the antipode `S⁻¹`.
    pub opposite_round_trip: Option<Outcome>,
}

impl AppendixChecks {
    pub fn ok(&self) -> bool {
        self.counit_leg.is_ok()
            && [
                &self.antipode_source_target,
                &self.leg_exchange,
                &self.e_prime,
                &self.opposite_round_trip,
            ]
            .into_iter()
            .all(|o| o.as_ref().is_none_or(|o| o.is_ok()))
    }
}

pub fn check_appendix(
    c: &CoproductData,
    wit: &WmhaWitness,
    w: &AntipodeWitness,
    st: &SourceTarget,
    reg: Option<&RegularSuite>,
) -> AppendixChecks {
    let n = c.n();
    let e = &wit.idempotent.e;
    let counit_leg = compare_ops("Φ∘E = Φ", &w.phi().compose(&e.left), &w.phi(), n, 2)
        .and_then(|_| compare_ops("Ψ∘E = Ψ", &w.psi().compose(&e.right), &w.psi(), n, 2));
    let Some(reg) = reg else {
        return AppendixChecks {
            counit_leg,
            antipode_source_target: None,
            leg_exchange: None,
            e_prime: None,
            opposite_round_trip: None,
        };
    };
    let (s, si) = (&reg.s_matrix, &reg.s_inverse);
    let s_of = |m: &Multiplier| antipode_on_multiplier(m, s, si);

    let antipode_source_target = (|| {
        for a in 0..n {
            let sa = s.col(a);
            compare_mult(
                "S(ε_t(a)) = ε_s(S(a))",
                &s_of(&st.eps_t[a]),
                &combine_mults(&sa, &st.eps_s, n),
                vec![a],
            )?;
            compare_mult(
                "S(ε_s(a)) = ε_t(S(a))",
                &s_of(&st.eps_s[a]),
                &combine_mults(&sa, &st.eps_t, n),
                vec![a],
            )?;
        }
        Ok(())
    })();

    let leg_exchange = (|| {
        for a in 0..n {
            let y = &st.eps_s[a];
            compare_tm(
                "E(y⊗1) = E(1⊗S(y))",
                &e.product(&tensor_one_left(y)),
                &e.product(&tensor_one_right(&s_of(y))),
                n,
            )
            .map_err(|v| Violation::new(v.law, vec![a]))?;
            let x = &st.eps_t[a];
            compare_tm(
                "(1⊗x)E = (S(x)⊗1)E",
                &tensor_one_right(x).product(e),
                &tensor_one_left(&s_of(x)).product(e),
                n,
            )
            .map_err(|v| Violation::new(v.law, vec![a]))?;
        }
        Ok(())
    })();

    let sigma = flip_op(n);
    let (ss, ssi) = (sp(s), sp(si));
    let e_prime = compare_tm(
        "σ(S⊗S)E = E",
        &anti_transport(e, &sigma.compose(&ss.kron(&ss)), &ssi.kron(&ssi).compose(&sigma)),
        e,
        n,
    );

    let opposite_round_trip = (|| {
        let op = reg.opposite_presentation(c);
        let o = verify_wmha(&op);
        if !o.passed() {
            return Err(Violation::new(
                format!("opposite presentation fails at {:?}", o.first_failure()),
                vec![],
            ));
        }
        let sw = AntipodeWitness::from_matrix(op.algebra(), si);
        let e_op = TensorMultiplier {
            left: e.right.clone(),
            right: e.left.clone(),
        };
        let rep = verify_via_antipode(&op, &sw.s, &e_op);
        if !rep.passed() {
            return Err(Violation::new("opposite presentation verifies through S⁻¹", vec![]));
        }
        Ok(())
    })();

    AppendixChecks {
        counit_leg,
        antipode_source_target: Some(antipode_source_target),
        leg_exchange: Some(leg_exchange),
        e_prime: Some(e_prime),
        opposite_round_trip: Some(opposite_round_trip),
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::solve;
    use super::super::{classify_regular, compute_source_target};
    use super::*;
    use crate::coalg::testing::*;

    #[test]
    fn models_satisfy_appendix_identities() {
        for c in [pair_function(2), pair_convolution(2), cyclic_group(3)] {
            let s = solve(c);
            let st = compute_source_target(&s.c, &s.wit.multipliers, &s.r, &s.s).unwrap();
            let reg = classify_regular(&s.c, &s.wit, &s.r, &s.s).suite;
            let a = check_appendix(&s.c, &s.wit, &s.s, &st, reg.as_ref());
            assert!(a.ok(), "{a:?}");
            assert!(a.opposite_round_trip.is_some());
        }
    }

    #[test]
    fn non_regular_input_skips_bijective_checks() {
        let s = solve(pair_function(2));
        let st = compute_source_target(&s.c, &s.wit.multipliers, &s.r, &s.s).unwrap();
        let a = check_appendix(&s.c, &s.wit, &s.s, &st, None);
        assert!(a.counit_leg.is_ok());
        assert!(a.e_prime.is_none());
    }
}
