use rayon::prelude::*;

use crate::exactla::{Accumulator, Echelon, Insertion, LinearSystem, Scalar, SparseOp, SparseVec, Subspace};
use crate::fdalg::MultiplierAlgebra;

use super::counit::Counit;
use super::extend::Preimage;
use super::idempotent::mult_ops;
use super::legs::{apply_kron, apply_pair, apply_single, basis3, decode, place, slices};
use super::{compare_ops, image, kernel, CoalgError, CoproductData, Outcome, TensorMultiplier, Violation};

/// The projections `G1`, `G2` on `A⊗A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionMaps {
    pub g1: SparseOp,
    pub g2: SparseOp,
}

/// Solves `G v = w` for all collected pairs.
fn solve_from_pairs(name: &'static str, nn: usize, pairs: Vec<(SparseVec, SparseVec)>) -> Result<SparseOp, CoalgError> {
    let mut ech = Echelon::new(nn);
    for (v, w) in pairs {
        if let Insertion::Dependent(r) = ech.insert(&v, &w) {
            if !r.is_zero() {
                return Err(CoalgError::NoSolution(name));
            }
        }
    }
    if !ech.is_full() {
        return Err(CoalgError::Ambiguous(name, nn - ech.rank()));
    }
    // a full fully reduced echelon has unit left parts
    let mut cols = vec![SparseVec::new(); nn];
    for (p, _, right) in ech.rows() {
        cols[p] = right.clone();
    }
    Ok(SparseOp::from_cols(nn, cols))
}

/// Pairs `(v, G1 v)` read off from
/// `(G1⊗ι)(Δ13(a)(1⊗b⊗c)) = Δ13(a)(1⊗E)(1⊗b⊗c)`, sliced along the third leg.
fn g1_pairs(c: &CoproductData, e: &TensorMultiplier) -> Vec<(SparseVec, SparseVec)> {
    let n = c.n();
    let t1 = c.t1();
    let w = |a: usize, b: usize, x: usize| place(t1.col(a * n + x), n, (0, 2), b);
    let per: Vec<Vec<(SparseVec, SparseVec)>> = (0..n * n * n)
        .into_par_iter()
        .map(|abc| {
            let d = decode(n, 3, abc);
            let (a, b, x) = (d[0], d[1], d[2]);
            let lhs = w(a, b, x);
            let mut acc = Accumulator::new();
            for (bx, z) in e.left.col(b * n + x).iter() {
                acc.add_vec(z, &w(a, bx / n, bx % n));
            }
            pair_slices(&lhs, &acc.finish(), n, 2)
        })
        .collect();
    per.into_iter().flatten().collect()
}

/// Pairs `(v, G2 v)` from `(ι⊗G2)((a⊗b⊗1)Δ13(c)) = (a⊗b⊗1)(E⊗1)Δ13(c)`,
/// sliced along the first leg.
fn g2_pairs(c: &CoproductData, e: &TensorMultiplier) -> Vec<(SparseVec, SparseVec)> {
    let n = c.n();
    let t2 = c.t2();
    let u = |a: usize, b: usize, x: usize| place(t2.col(a * n + x), n, (0, 2), b);
    let per: Vec<Vec<(SparseVec, SparseVec)>> = (0..n * n * n)
        .into_par_iter()
        .map(|abc| {
            let d = decode(n, 3, abc);
            let (a, b, x) = (d[0], d[1], d[2]);
            let lhs = u(a, b, x);
            let mut acc = Accumulator::new();
            for (ab, z) in e.right.col(a * n + b).iter() {
                acc.add_vec(z, &u(ab / n, ab % n, x));
            }
            pair_slices(&lhs, &acc.finish(), n, 0)
        })
        .collect();
    per.into_iter().flatten().collect()
}

fn pair_slices(lhs: &SparseVec, rhs: &SparseVec, n: usize, leg: usize) -> Vec<(SparseVec, SparseVec)> {
    let mut l = slices(lhs, n, leg).into_iter().peekable();
    let mut r = slices(rhs, n, leg).into_iter().peekable();
    let mut out = Vec::new();
    loop {
        let next = match (l.peek(), r.peek()) {
            (None, None) => break,
            (Some((i, _)), None) => *i,
            (None, Some((j, _))) => *j,
            (Some((i, _)), Some((j, _))) => (*i).min(*j),
        };
        let v = if l.peek().map(|(i, _)| *i) == Some(next) {
            l.next().unwrap().1
        } else {
            SparseVec::new()
        };
        let w = if r.peek().map(|(j, _)| *j) == Some(next) {
            r.next().unwrap().1
        } else {
            SparseVec::new()
        };
        out.push((v, w));
    }
    out
}

/// `Θ_c(r) = (ι⊗ε)((c⊗r)E)` on basis `r`, as an operator on `A`, for `c` given as a vector.
fn theta_right(c: &CoproductData, e: &TensorMultiplier, eps: &Counit, cvec: &SparseVec) -> SparseOp {
    let n = c.n();
    let cols = (0..n)
        .map(|r| {
            let x = crate::exactla::kron_vec(cvec, &SparseVec::unit(r), n);
            eps.contract_second(&e.right.apply(&x), n)
        })
        .collect();
    SparseOp::from_cols(n, cols)
}

/// `Θ'_b(r) = (ε⊗ι)(E(r⊗b))`.
fn theta_left(c: &CoproductData, e: &TensorMultiplier, eps: &Counit, bvec: &SparseVec) -> SparseOp {
    let n = c.n();
    let cols = (0..n)
        .map(|r| {
            let x = crate::exactla::kron_vec(&SparseVec::unit(r), bvec, n);
            eps.contract_first(&e.left.apply(&x), n)
        })
        .collect();
    SparseOp::from_cols(n, cols)
}

/// `G1`, `G2` from the constructive formulas
/// `(b⊗c)G1(p⊗q) = Σ b p₍₁₎ ⊗ (ι⊗ε)((c⊗p₍₂₎)E) q` and its mirror.
fn constructive(c: &CoproductData, e: &TensorMultiplier, eps: &Counit) -> ProjectionMaps {
    let n = c.n();
    let nn = n * n;
    let alg = c.algebra();
    if let Some(u) = alg.find_unit() {
        let u = SparseVec::from_dense(&u);
        let th = theta_right(c, e, eps, &u);
        let th2 = theta_left(c, e, eps, &u);
        let mut g1 = Vec::with_capacity(nn);
        let mut g2 = Vec::with_capacity(nn);
        for p in 0..n {
            for q in 0..n {
                // T2(1⊗p)
                let mut acc = Accumulator::new();
                for (k, v) in u.iter() {
                    acc.add_vec(v, c.t2().col(k * n + p));
                }
                let y = apply_single(&th, n, 2, 1, &acc.finish());
                g1.push(apply_single(c.rmul(q), n, 2, 1, &y));
                // T1(q⊗1)
                let mut acc = Accumulator::new();
                for (k, v) in u.iter() {
                    acc.add_vec(v, c.t1().col(q * n + k));
                }
                let y = apply_single(&th2, n, 2, 0, &acc.finish());
                g2.push(apply_single(c.lmul(p), n, 2, 0, &y));
            }
        }
        return ProjectionMaps {
            g1: SparseOp::from_cols(nn, g1),
            g2: SparseOp::from_cols(nn, g2),
        };
    }
    // recover G(x) from all products (b⊗c)G(x), resp. G(x)(b⊗c)
    let stack = |ops: &[SparseOp]| {
        let cols = (0..nn)
            .map(|x| {
                let ex = SparseVec::unit(x);
                let mut entries = Vec::new();
                for b in 0..n {
                    for cc in 0..n {
                        let off = (b * n + cc) * nn;
                        for (i, v) in apply_kron(&ops[b], &ops[cc], n, &ex).iter() {
                            entries.push((off + i, v.clone()));
                        }
                    }
                }
                SparseVec::from_entries(entries)
            })
            .collect();
        Preimage::new(&SparseOp::from_cols(nn * nn, cols), false)
    };
    let left_stack = stack(c.lmuls());
    let right_stack = stack(c.rmuls());
    let ths: Vec<SparseOp> = (0..n).map(|b| theta_right(c, e, eps, &SparseVec::unit(b))).collect();
    let th2s: Vec<SparseOp> = (0..n).map(|b| theta_left(c, e, eps, &SparseVec::unit(b))).collect();
    let mut g1 = Vec::with_capacity(nn);
    let mut g2 = Vec::with_capacity(nn);
    for p in 0..n {
        for q in 0..n {
            let mut r1 = Vec::new();
            let mut r2 = Vec::new();
            for b in 0..n {
                for cc in 0..n {
                    let off = (b * n + cc) * nn;
                    let y = apply_single(&ths[cc], n, 2, 1, c.t2().col(b * n + p));
                    let y = apply_single(c.rmul(q), n, 2, 1, &y);
                    r1.extend(y.iter().map(|(i, v)| (off + i, v.clone())));
                    let y = apply_single(&th2s[b], n, 2, 0, c.t1().col(q * n + cc));
                    let y = apply_single(c.lmul(p), n, 2, 0, &y);
                    r2.extend(y.iter().map(|(i, v)| (off + i, v.clone())));
                }
            }
            g1.push(left_stack.apply(&SparseVec::from_entries(r1)));
            g2.push(right_stack.apply(&SparseVec::from_entries(r2)));
        }
    }
    ProjectionMaps {
        g1: SparseOp::from_cols(nn, g1),
        g2: SparseOp::from_cols(nn, g2),
    }
}

/// Solves the defining equations for `G1`, `G2` and cross-checks them
/// against the constructive formulas.
pub fn solve_g_maps(c: &CoproductData, e: &TensorMultiplier, eps: &Counit) -> Result<ProjectionMaps, CoalgError> {
    let nn = c.n() * c.n();
    let g1 = solve_from_pairs("G1", nn, g1_pairs(c, e))?;
    let g2 = solve_from_pairs("G2", nn, g2_pairs(c, e))?;
    let alt = constructive(c, e, eps);
    if let Some(x) = g1.first_difference(&alt.g1) {
        return Err(CoalgError::CrossCheckMismatch(
            "G1",
            Violation::new("G1 columns agree", decode(c.n(), 2, x)),
        ));
    }
    if let Some(x) = g2.first_difference(&alt.g2) {
        return Err(CoalgError::CrossCheckMismatch(
            "G2",
            Violation::new("G2 columns agree", decode(c.n(), 2, x)),
        ));
    }
    Ok(ProjectionMaps { g1, g2 })
}

/// Laws satisfied by `G1`, `G2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLaws {
    pub idempotent: Outcome,
    /// `T1 G1 = T1` and `T2 G2 = T2`.
    pub absorbed: Outcome,
    pub module: Outcome,
    /// `(T2⊗ι)(ι⊗G1) = (ι⊗G1)(T2⊗ι)` and `(ι⊗T1)(G2⊗ι) = (G2⊗ι)(ι⊗T1)`.
    pub commute: Outcome,
}

impl GLaws {
    pub fn ok(&self) -> bool {
        self.idempotent.is_ok() && self.absorbed.is_ok() && self.module.is_ok() && self.commute.is_ok()
    }
}

pub fn check_g_laws(c: &CoproductData, g: &ProjectionMaps) -> GLaws {
    let n = c.n();
    let idempotent = compare_ops("G1² = G1", &g.g1.compose(&g.g1), &g.g1, n, 2)
        .and_then(|_| compare_ops("G2² = G2", &g.g2.compose(&g.g2), &g.g2, n, 2));
    let absorbed = compare_ops("T1 G1 = T1", &c.t1().compose(&g.g1), c.t1(), n, 2)
        .and_then(|_| compare_ops("T2 G2 = T2", &c.t2().compose(&g.g2), c.t2(), n, 2));
    let module = (|| {
        let alg = c.algebra();
        for a in 0..n {
            for b in 0..n {
                for b2 in 0..n {
                    let mut lhs = Accumulator::new();
                    for (k, v) in alg.product(b, b2).iter() {
                        lhs.add_vec(v, g.g1.col(a * n + k));
                    }
                    let rhs = apply_single(c.rmul(b2), n, 2, 1, g.g1.col(a * n + b));
                    if lhs.finish() != rhs {
                        return Err(Violation::new("G1(a⊗bb') = G1(a⊗b)(1⊗b')", vec![a, b, b2]));
                    }
                    // G2(a'a⊗b) with (a', a, b) = (a, b, b2)
                    let mut lhs = Accumulator::new();
                    for (k, v) in alg.product(a, b).iter() {
                        lhs.add_vec(v, g.g2.col(k * n + b2));
                    }
                    let rhs = apply_single(c.lmul(a), n, 2, 0, g.g2.col(b * n + b2));
                    if lhs.finish() != rhs {
                        return Err(Violation::new("G2(a'a⊗b) = (a'⊗1)G2(a⊗b)", vec![a, b, b2]));
                    }
                }
            }
        }
        Ok(())
    })();
    let commute = (|| {
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    let x = basis3(n, a, b, d);
                    let l = apply_pair(c.t2(), n, 3, (0, 1), &apply_pair(&g.g1, n, 3, (1, 2), &x));
                    let r = apply_pair(&g.g1, n, 3, (1, 2), &apply_pair(c.t2(), n, 3, (0, 1), &x));
                    if l != r {
                        return Err(Violation::new("(T2⊗ι)(ι⊗G1) = (ι⊗G1)(T2⊗ι)", vec![a, b, d]));
                    }
                    let l = apply_pair(c.t1(), n, 3, (1, 2), &apply_pair(&g.g2, n, 3, (0, 1), &x));
                    let r = apply_pair(&g.g2, n, 3, (0, 1), &apply_pair(c.t1(), n, 3, (1, 2), &x));
                    if l != r {
                        return Err(Violation::new("(ι⊗T1)(G2⊗ι) = (G2⊗ι)(ι⊗T1)", vec![a, b, d]));
                    }
                }
            }
        }
        Ok(())
    })();
    GLaws {
        idempotent,
        absorbed,
        module,
        commute,
    }
}

/// Kernel conditions, containment and equality reported separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelDiagnostics {
    pub ker_t1: Subspace,
    pub ker_t2: Subspace,
    /// `(1−G1)(A⊗A) ⊆ Ker T1` and the same for `G2`.
    pub contained: Outcome,
    /// `Ker T1 = (1−G1)(A⊗A)` and `Ker T2 = (1−G2)(A⊗A)`.
    pub equal: Outcome,
}

pub fn check_kernels(c: &CoproductData, g: &ProjectionMaps) -> KernelDiagnostics {
    let n = c.n();
    let nn = n * n;
    let id = SparseOp::identity(nn);
    let ker_t1 = kernel(c.t1());
    let ker_t2 = kernel(c.t2());
    let im1 = image(&id.sub(&g.g1));
    let im2 = image(&id.sub(&g.g2));
    let contained = compare_ops(
        "T1(1−G1) = 0",
        &c.t1().compose(&id.sub(&g.g1)),
        &SparseOp::zero(nn, nn),
        n,
        2,
    )
    .and_then(|_| {
        compare_ops(
            "T2(1−G2) = 0",
            &c.t2().compose(&id.sub(&g.g2)),
            &SparseOp::zero(nn, nn),
            n,
            2,
        )
    });
    let equal = if ker_t1 != im1 {
        Err(Violation::new(
            format!("Ker T1 (dim {}) = (1−G1)(A⊗A) (dim {})", ker_t1.dim(), im1.dim()),
            vec![],
        ))
    } else if ker_t2 != im2 {
        Err(Violation::new(
            format!("Ker T2 (dim {}) = (1−G2)(A⊗A) (dim {})", ker_t2.dim(), im2.dim()),
            vec![],
        ))
    } else {
        Ok(())
    };
    KernelDiagnostics {
        ker_t1,
        ker_t2,
        contained,
        equal,
    }
}

/// Tries to write `G(a⊗b) = (a⊗1)F(1⊗b)` with `F = Σ c_{αβ} m_α⊗m_β`;
/// returns the coefficients, or `None` when no such `F` exists.
pub fn factorize_g(c: &CoproductData, g: &SparseOp, ma: &MultiplierAlgebra) -> Option<Vec<Scalar>> {
    let n = c.n();
    let (ml, mr) = mult_ops(ma);
    let d = ma.dim();
    let mut sys = LinearSystem::new(d * d);
    for x in 0..n * n {
        let ex = SparseVec::unit(x);
        let mut rows: std::collections::BTreeMap<usize, Vec<(usize, Scalar)>> = Default::default();
        for (i, _) in g.col(x).iter() {
            rows.entry(*i).or_default();
        }
        for ab in 0..d * d {
            // (a⊗1)(f⊗h)(1⊗b) = af ⊗ hb
            for (i, v) in apply_kron(&mr[ab / d], &ml[ab % d], n, &ex).iter() {
                rows.entry(*i).or_default().push((ab, v.clone()));
            }
        }
        for (i, r) in rows {
            sys.push(&SparseVec::from_entries(r), &g.col(x).get(i));
        }
    }
    sys.solve().ok().map(|s| s.particular)
}

#[cfg(test)]
mod tests {
    use super::super::counit::solve_counit;
    use super::super::idempotent::compute_e;
    use super::super::testing::*;
    use super::*;

    fn gmaps(c: &CoproductData) -> (ProjectionMaps, MultiplierAlgebra) {
        let ma = MultiplierAlgebra::new(c.algebra()).unwrap();
        let e = compute_e(c, &ma).unwrap();
        let eps = solve_counit(c).unwrap();
        (solve_g_maps(c, &e.e, &eps).unwrap(), ma)
    }

    #[test]
    fn hopf_case_gives_identity() {
        let c = cyclic_group(3);
        let (g, _) = gmaps(&c);
        assert!(g.g1.is_identity() && g.g2.is_identity());
    }

    #[test]
    fn function_model_g_maps_are_source_and_target_indicators() {
        let c = pair_function(2);
        let (g, ma) = gmaps(&c);
        // G1 multiplies by [s(p) = s(q)], i.e. j = l for p = (i,j), q = (k,l)
        for x in 0..16 {
            let (p, q) = (x / 4, x % 4);
            let expect = if p % 2 == q % 2 {
                SparseVec::unit(x)
            } else {
                SparseVec::new()
            };
            assert_eq!(*g.g1.col(x), expect);
            let expect = if p / 2 == q / 2 {
                SparseVec::unit(x)
            } else {
                SparseVec::new()
            };
            assert_eq!(*g.g2.col(x), expect);
        }
        let laws = check_g_laws(&c, &g);
        assert!(laws.ok(), "{laws:?}");
        let k = check_kernels(&c, &g);
        assert_eq!(k.ker_t1.dim(), 8);
        assert!(k.contained.is_ok() && k.equal.is_ok());
        assert!(factorize_g(&c, &g.g1, &ma).is_some());
    }

    #[test]
    fn convolution_model_g_maps() {
        let c = pair_convolution(2);
        let (g, _) = gmaps(&c);
        assert!(check_g_laws(&c, &g).ok());
        let k = check_kernels(&c, &g);
        assert!(k.equal.is_ok());
    }

    #[test]
    fn larger_projection_breaks_kernel_equality() {
        let c = pair_function(2);
        let (g, _) = gmaps(&c);
        let bigger = ProjectionMaps {
            g1: SparseOp::identity(16),
            g2: g.g2.clone(),
        };
        let k = check_kernels(&c, &bigger);
        assert!(k.contained.is_ok());
        assert!(k.equal.is_err());
    }
}
