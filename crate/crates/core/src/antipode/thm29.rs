use crate::coalg::legs::tensor_mul;
use crate::coalg::{
    check_e_conditions, check_fullness, compare_ops, solve_counit, validate_coproduct, CoproductData, EConditions,
    Outcome, Preimage, TensorMultiplier, Violation,
};
use crate::exactla::{Accumulator, SparseOp, SparseVec};
use crate::fdalg::{Algebra, Multiplier};

use super::{check_convolution_identities, GeneralizedInverses};

/// Result of checking the structure through a supplied antipode and idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntipodeCandidateReport {
    /// Non-degenerate idempotent algebra, valid full coproduct, counit, `S(a)` multipliers.
    pub prerequisites: Outcome,
    /// `R1`, `R2` built from `S` land in `A⊗A`.
    pub r: Option<Result<GeneralizedInverses, Violation>>,
    pub convolution: Option<Outcome>,
    /// `T1R1 = E` and `T2R2 = E` on the right.
    pub ranges: Option<Outcome>,
    pub e_conditions: Option<EConditions>,
}

impl AntipodeCandidateReport {
    pub fn passed(&self) -> bool {
        self.prerequisites.is_ok()
            && matches!(self.r, Some(Ok(_)))
            && matches!(self.convolution, Some(Ok(())))
            && matches!(self.ranges, Some(Ok(())))
            && self.e_conditions.as_ref().is_some_and(|e| e.ok())
    }
}

fn prerequisites(c: &CoproductData, s: &[Multiplier], e: &TensorMultiplier) -> Outcome {
    let alg = c.algebra();
    let n = c.n();
    let diag = alg.validate();
    if !diag.associative() || !diag.nondegenerate() {
        return Err(Violation::new("associative non-degenerate algebra", vec![]));
    }
    if !diag.idempotent {
        return Err(Violation::new("idempotent algebra", vec![]));
    }
    if !validate_coproduct(c).ok() {
        return Err(Violation::new("valid coproduct", vec![]));
    }
    if !check_fullness(c).full() {
        return Err(Violation::new("full coproduct", vec![]));
    }
    if let Err(err) = solve_counit(c) {
        return Err(Violation::new(format!("counit: {err}"), vec![]));
    }
    if s.len() != n {
        return Err(Violation::new(
            format!("antipode has {} columns, expected {n}", s.len()),
            vec![],
        ));
    }
    for (a, sa) in s.iter().enumerate() {
        if sa.violation(alg).is_some() {
            return Err(Violation::new("S(a) is a multiplier", vec![a]));
        }
    }
    if e.left.rows() != n * n || e.left.ncols() != n * n || e.right.rows() != n * n || e.right.ncols() != n * n {
        return Err(Violation::new("E acts on A⊗A", vec![]));
    }
    Ok(())
}

/// `R1(a⊗b) = Σ a(1)⊗S(a(2))b`, recovered from
/// `(c⊗1)R1(a⊗b) = (ι⊗Ŝ_b)T2(c⊗a)` for all `c` with `Ŝ_b(p) = S(p)b`, and
/// `R2(a⊗b) = Σ aS(b(1))⊗b(2)` from `R2(a⊗b)(1⊗c) = (Š_a⊗ι)T1(b⊗c)` with
/// `Š_a(p) = aS(p)`.
fn r_from_antipode(c: &CoproductData, s: &[Multiplier]) -> Result<GeneralizedInverses, Violation> {
    let n = c.n();
    let nn = n * n;
    let alg = c.algebra();
    let sl: Vec<Vec<SparseVec>> = s.iter().map(|m| m.left.sparse_cols()).collect();
    let sr: Vec<Vec<SparseVec>> = s.iter().map(|m| m.right.sparse_cols()).collect();

    // x ↦ ((c⊗1)x)_c and x ↦ (x(1⊗c))_c stacked over c
    let mut left_stack = Vec::with_capacity(nn);
    let mut right_stack = Vec::with_capacity(nn);
    for x in 0..nn {
        let (p, q) = (x / n, x % n);
        let mut l = Vec::new();
        let mut r = Vec::new();
        for cc in 0..n {
            for (i, v) in alg.product(cc, p).iter() {
                l.push((cc * nn + i * n + q, v.clone()));
            }
            for (j, v) in alg.product(q, cc).iter() {
                r.push((cc * nn + p * n + j, v.clone()));
            }
        }
        left_stack.push(SparseVec::from_entries(l));
        right_stack.push(SparseVec::from_entries(r));
    }
    let pl = Preimage::new(&SparseOp::from_cols(n * nn, left_stack), false);
    let pr = Preimage::new(&SparseOp::from_cols(n * nn, right_stack), false);

    let mut r1 = Vec::with_capacity(nn);
    let mut r2 = Vec::with_capacity(nn);
    for a in 0..n {
        for b in 0..n {
            let mut target = Accumulator::new();
            for cc in 0..n {
                for (pq, v) in c.t2().col(cc * n + a).iter() {
                    let (p, q) = (pq / n, pq % n);
                    for (i, u) in sl[q][b].iter() {
                        target.add_mul(cc * nn + p * n + i, v, u);
                    }
                }
            }
            let target = target.finish();
            if !pl.contains(&target) {
                return Err(Violation::new("R1(a⊗b) lies in A⊗A", vec![a, b]));
            }
            r1.push(pl.apply(&target));

            let mut target = Accumulator::new();
            for cc in 0..n {
                for (pq, v) in c.t1().col(b * n + cc).iter() {
                    let (p, q) = (pq / n, pq % n);
                    for (i, u) in sr[p][a].iter() {
                        target.add_mul(cc * nn + i * n + q, v, u);
                    }
                }
            }
            let target = target.finish();
            if !pr.contains(&target) {
                return Err(Violation::new("R2(a⊗b) lies in A⊗A", vec![a, b]));
            }
            r2.push(pr.apply(&target));
        }
    }
    Ok(GeneralizedInverses {
        r1: SparseOp::from_cols(nn, r1),
        r2: SparseOp::from_cols(nn, r2),
    })
}

/// Checks the structure from a candidate antipode `s` and idempotent `e`:
/// the maps `R1`, `R2` defined by `s` land in `A⊗A`, satisfy the
/// convolution identities, `T1R1 = E`, `T2R2 = E`, and `E` satisfies the
/// comultiplication conditions.
pub fn verify_via_antipode(c: &CoproductData, s: &[Multiplier], e: &TensorMultiplier) -> AntipodeCandidateReport {
    let mut out = AntipodeCandidateReport {
        prerequisites: prerequisites(c, s, e),
        r: None,
        convolution: None,
        ranges: None,
        e_conditions: None,
    };
    if out.prerequisites.is_err() {
        return out;
    }
    let n = c.n();
    let r = r_from_antipode(c, s);
    out.r = Some(r.clone());
    let Ok(r) = r else { return out };
    out.convolution = Some(check_convolution_identities(c, &r, s));
    let ranges = compare_ops("T1R1 = E", &c.t1().compose(&r.r1), &e.left, n, 2)
        .and_then(|_| compare_ops("T2R2 = E (right)", &c.t2().compose(&r.r2), &e.right, n, 2));
    let ok = ranges.is_ok();
    out.ranges = Some(ranges);
    if ok {
        out.e_conditions = Some(check_e_conditions(c, e, &Preimage::new(c.t1(), false)));
    }
    out
}

/// Left and right multiplication by an element of `A⊗A`.
pub fn e_from_element(alg: &Algebra, v: &SparseVec) -> TensorMultiplier {
    let nn = alg.dim() * alg.dim();
    TensorMultiplier {
        left: SparseOp::from_cols(
            nn,
            (0..nn).map(|x| tensor_mul(alg, 2, v, &SparseVec::unit(x))).collect(),
        ),
        right: SparseOp::from_cols(
            nn,
            (0..nn).map(|x| tensor_mul(alg, 2, &SparseVec::unit(x), v)).collect(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::solve;
    use super::*;
    use crate::coalg::testing::*;

    #[test]
    fn computed_antipode_passes_and_reproduces_r() {
        for c in [pair_function(2), pair_convolution(2), cyclic_group(3)] {
            let s = solve(c);
            let rep = verify_via_antipode(&s.c, &s.s.s, &s.wit.idempotent.e);
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(rep.r, Some(Ok(s.r.clone())));
        }
    }

    #[test]
    fn identity_antipode_fails_convolution_identities() {
        let s = solve(pair_function(2));
        let id: Vec<Multiplier> = (0..4).map(|a| Multiplier::from_basis(s.c.algebra(), a)).collect();
        let rep = verify_via_antipode(&s.c, &id, &s.wit.idempotent.e);
        assert!(!rep.passed());
        assert!(matches!(rep.convolution, Some(Err(_))) || matches!(rep.r, Some(Err(_))));
    }

    #[test]
    fn unit_coproduct_gives_e() {
        let c = cyclic_group(2);
        let unit = SparseVec::unit(0);
        let d1 = c.t1().apply(&crate::exactla::kron_vec(&unit, &unit, 2));
        let e = e_from_element(c.algebra(), &d1);
        assert!(e.left.is_identity() && e.right.is_identity());
    }
}
