use crate::coalg::{compare_ops, CoproductData, Extension, Outcome, TensorMultiplier, Violation};
use crate::exactla::{Accumulator, SparseOp, SparseVec, Subspace};
use crate::fdalg::Multiplier;

use super::{combine_mults, compare_mult, compare_tm, multiplication, phi, psi, AntipodeWitness, GeneralizedInverses};

/// Identities satisfied by the antipode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntipodeIdentities {
    /// `Σ a(1)S(a(2))a(3) = a` and `Σ S(a(1))a(2)S(a(3)) = S(a)`, for `S1` and `S2`.
    pub convolution: Outcome,
    /// `Σ a(1)S1(a(2)) = Σ a(1)S2(a(2))` and `Σ S1(a(1))a(2) = Σ S2(a(1))a(2)`.
    pub remark: Outcome,
    /// `S(ab) = S(b)S(a)`.
    pub anti_multiplicative: Outcome,
    /// `span A·S(A) = A` and `span S(A)·A = A`.
    pub nondegenerate: Outcome,
    /// `Δ(S(a)) = E·σ(S⊗S)Δ(a) = σ(S⊗S)Δ(a)·E`.
    pub anti_coalgebra: Outcome,
}

impl AntipodeIdentities {
    pub fn ok(&self) -> bool {
        self.convolution.is_ok()
            && self.remark.is_ok()
            && self.anti_multiplicative.is_ok()
            && self.nondegenerate.is_ok()
            && self.anti_coalgebra.is_ok()
    }
}

/// `m R1 T1 = m`, `Φ T1 R1 = Φ`, `m R2 T2 = m`, `Ψ T2 R2 = Ψ` with
/// `Φ(x⊗y) = S(x)y` and `Ψ(x⊗y) = xS(y)`.
pub fn check_convolution_identities(c: &CoproductData, r: &GeneralizedInverses, s: &[Multiplier]) -> Outcome {
    let n = c.n();
    let m = multiplication(c.algebra());
    let (ph, ps) = (phi(s), psi(s));
    compare_ops("Σ a(1)S1(a(2))a(3)b = ab", &m.compose(&r.r1).compose(c.t1()), &m, n, 2)?;
    compare_ops(
        "Σ S1(a(1))a(2)S1(a(3))b = S1(a)b",
        &ph.compose(c.t1()).compose(&r.r1),
        &ph,
        n,
        2,
    )?;
    compare_ops("Σ b a(1)S2(a(2))a(3) = ba", &m.compose(&r.r2).compose(c.t2()), &m, n, 2)?;
    compare_ops(
        "Σ b S2(a(1))a(2)S2(a(3)) = bS2(a)",
        &ps.compose(c.t2()).compose(&r.r2),
        &ps,
        n,
        2,
    )
}

/// The two equalities whose conjunction is equivalent to `S1 = S2`, each
/// contracted against `c` on the left and `b` on the right.
pub fn check_remark_equivalence(c: &CoproductData, r: &GeneralizedInverses, s: &[Multiplier]) -> Outcome {
    let n = c.n();
    let alg = c.algebra();
    let m = multiplication(alg);
    let x = m.compose(&r.r1);
    let y = psi(s).compose(c.t2());
    let z = phi(s).compose(c.t1());
    let w = m.compose(&r.r2);
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let (eb, ec) = (SparseVec::unit(b), SparseVec::unit(cc));
                let l = alg.mul_sparse(&ec, x.col(a * n + b));
                let r = alg.mul_sparse(y.col(cc * n + a), &eb);
                if l != r {
                    return Err(Violation::new("Σ a(1)S1(a(2)) = Σ a(1)S2(a(2))", vec![a, b, cc]));
                }
                let l = alg.mul_sparse(&ec, z.col(a * n + b));
                let r = alg.mul_sparse(w.col(cc * n + a), &eb);
                if l != r {
                    return Err(Violation::new("Σ S1(a(1))a(2) = Σ S2(a(1))a(2)", vec![a, b, cc]));
                }
            }
        }
    }
    Ok(())
}

fn check_anti_multiplicative(c: &CoproductData, s: &[Multiplier]) -> Outcome {
    let n = c.n();
    for a in 0..n {
        for b in 0..n {
            let ab = c.algebra().product(a, b).to_dense(n);
            let lhs = combine_mults(&ab, s, n);
            compare_mult("S(ab) = S(b)S(a)", &lhs, &s[b].product(&s[a]), vec![a, b])?;
        }
    }
    Ok(())
}

fn check_nondegenerate(c: &CoproductData, s: &[Multiplier]) -> Outcome {
    let n = c.n();
    let right = Subspace::from_sparse(n, s.iter().flat_map(|m| m.right.sparse_cols()));
    if !right.is_full() {
        return Err(Violation::new(format!("span A·S(A) = A (dim {})", right.dim()), vec![]));
    }
    let left = Subspace::from_sparse(n, s.iter().flat_map(|m| m.left.sparse_cols()));
    if !left.is_full() {
        return Err(Violation::new(format!("span S(A)·A = A (dim {})", left.dim()), vec![]));
    }
    Ok(())
}

/// `σ(S⊗S)Δ(a)` as a multiplier of `A⊗A`: on the left
/// `x⊗y ↦ σ((K_y⊗ι)R1(a⊗x))` with `K_y(p) = S(p)y`, on the right
/// `x⊗y ↦ σ((ι⊗K'_x)R2(y⊗a))` with `K'_x(p) = xS(p)`.
pub fn anti_coproduct(c: &CoproductData, r: &GeneralizedInverses, s: &[Multiplier], a: usize) -> TensorMultiplier {
    let n = c.n();
    let sl: Vec<Vec<SparseVec>> = s.iter().map(|m| m.left.sparse_cols()).collect();
    let sr: Vec<Vec<SparseVec>> = s.iter().map(|m| m.right.sparse_cols()).collect();
    let mut left = Vec::with_capacity(n * n);
    let mut right = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let mut acc = Accumulator::new();
            for (pq, v) in r.r1.col(a * n + x).iter() {
                let (p, q) = (pq / n, pq % n);
                for (i, u) in sl[p][y].iter() {
                    acc.add_mul(q * n + i, v, u);
                }
            }
            left.push(acc.finish());
            let mut acc = Accumulator::new();
            for (pq, v) in r.r2.col(y * n + a).iter() {
                let (p, q) = (pq / n, pq % n);
                for (i, u) in sr[q][x].iter() {
                    acc.add_mul(i * n + p, v, u);
                }
            }
            right.push(acc.finish());
        }
    }
    TensorMultiplier {
        left: SparseOp::from_cols(n * n, left),
        right: SparseOp::from_cols(n * n, right),
    }
}

fn check_anti_coalgebra(c: &CoproductData, e: &TensorMultiplier, r: &GeneralizedInverses, s: &[Multiplier]) -> Outcome {
    let n = c.n();
    let ext = Extension::new(c, e);
    for (a, sa) in s.iter().enumerate() {
        let d = ext
            .extend_multiplier(sa)
            .map_err(|err| Violation::new(format!("Δ(S(a)) is defined: {err}"), vec![a]))?;
        let x = anti_coproduct(c, r, s, a);
        compare_tm("Δ(S(a)) = E·σ(S⊗S)Δ(a)", &d, &e.product(&x), n).map_err(|v| Violation::new(v.law, vec![a]))?;
        compare_tm("Δ(S(a)) = σ(S⊗S)Δ(a)·E", &d, &x.product(e), n).map_err(|v| Violation::new(v.law, vec![a]))?;
    }
    Ok(())
}

/// `Δ(S(a)) = σ(S⊗S)Δ(a)` without `E`.
pub(crate) fn check_strong_anti_coalgebra(
    c: &CoproductData,
    e: &TensorMultiplier,
    r: &GeneralizedInverses,
    s: &[Multiplier],
) -> Outcome {
    let n = c.n();
    let ext = Extension::new(c, e);
    for (a, sa) in s.iter().enumerate() {
        let d = ext
            .extend_multiplier(sa)
            .map_err(|err| Violation::new(format!("Δ(S(a)) is defined: {err}"), vec![a]))?;
        compare_tm("Δ(S(a)) = σ(S⊗S)Δ(a)", &d, &anti_coproduct(c, r, s, a), n)
            .map_err(|v| Violation::new(v.law, vec![a]))?;
    }
    Ok(())
}

pub fn check_antipode_identities(
    c: &CoproductData,
    e: &TensorMultiplier,
    r: &GeneralizedInverses,
    w: &AntipodeWitness,
) -> AntipodeIdentities {
    AntipodeIdentities {
        convolution: check_convolution_identities(c, r, &w.s),
        remark: check_remark_equivalence(c, r, &w.s),
        anti_multiplicative: check_anti_multiplicative(c, &w.s),
        nondegenerate: check_nondegenerate(c, &w.s),
        anti_coalgebra: check_anti_coalgebra(c, e, r, &w.s),
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::solve;
    use super::*;
    use crate::coalg::testing::*;

    #[test]
    fn models_satisfy_identities() {
        for c in [pair_function(2), pair_convolution(2), cyclic_group(3)] {
            let s = solve(c);
            let d = check_antipode_identities(&s.c, &s.wit.idempotent.e, &s.r, &s.s);
            assert!(d.ok(), "{d:?}");
        }
    }

    #[test]
    fn anti_coproduct_of_convolution_model_by_direct_computation() {
        // σ(S⊗S)Δ(λ_p) = λ_{p⁻¹}⊗λ_{p⁻¹}: left action x⊗y ↦ λ_{p⁻¹}x⊗λ_{p⁻¹}y
        let s = solve(pair_convolution(2));
        let n = 4;
        for p in 0..n {
            let inv = (p % 2) * 2 + p / 2;
            let x = anti_coproduct(&s.c, &s.r, &s.s.s, p);
            let l = s.c.lmul(inv);
            assert_eq!(x.left, l.kron(l));
            let r = s.c.rmul(inv);
            assert_eq!(x.right, r.kron(r));
        }
    }

    #[test]
    fn identity_in_place_of_antipode_breaks_convolution() {
        let s = solve(pair_function(2));
        let id: Vec<Multiplier> = (0..4).map(|a| Multiplier::from_basis(s.c.algebra(), a)).collect();
        assert!(check_convolution_identities(&s.c, &s.r, &id).is_err());
    }
}
