use rayon::prelude::*;

use crate::coalg::{CanonicalIdempotent, CoproductData, Extension, Outcome, TensorMultiplier, Violation};
use crate::exactla::{Accumulator, Matrix, Scalar, SparseVec, Subspace};
use crate::fdalg::{Multiplier, MultiplierAlgebra};

use super::{compare_tm, multiplication, tensor_one_left, tensor_one_right, AntipodeWitness, GeneralizedInverses};

/// `ε_s(a) = Σ S(a(1))a(2)` and `ε_t(a) = Σ a(1)S(a(2))` on basis elements,
/// with their images in multiplier coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceTarget {
    pub eps_s: Vec<Multiplier>,
    pub eps_t: Vec<Multiplier>,
    pub coords_s: Vec<Vec<Scalar>>,
    pub coords_t: Vec<Vec<Scalar>>,
    pub image_s: Subspace,
    pub image_t: Subspace,
}

impl SourceTarget {
    /// Elements of `A` when the images lie in `A`.
    pub fn elements(ma: &MultiplierAlgebra, c: &CoproductData, ms: &[Multiplier]) -> Option<Vec<Vec<Scalar>>> {
        ms.iter().map(|m| ma.element_of(c.algebra(), m)).collect()
    }
}

/// `ε_t(a)`: `b ↦ mR1(a⊗b)`, `c ↦ Ψ T2(c⊗a)`; `ε_s(a)`: `b ↦ Φ T1(a⊗b)`,
/// `c ↦ mR2(c⊗a)`.
pub fn compute_source_target(
    c: &CoproductData,
    ma: &MultiplierAlgebra,
    r: &GeneralizedInverses,
    w: &AntipodeWitness,
) -> Result<SourceTarget, Violation> {
    let n = c.n();
    let m = multiplication(c.algebra());
    let mr1 = m.compose(&r.r1);
    let mr2 = m.compose(&r.r2);
    let pt2 = w.psi().compose(c.t2());
    let pt1 = w.phi().compose(c.t1());
    let build = |cols_l: &dyn Fn(usize) -> SparseVec, cols_r: &dyn Fn(usize) -> SparseVec| {
        let l: Vec<SparseVec> = (0..n).map(cols_l).collect();
        let r: Vec<SparseVec> = (0..n).map(cols_r).collect();
        Multiplier::new(Matrix::from_sparse_cols(n, &l), Matrix::from_sparse_cols(n, &r))
    };
    let mut eps_s = Vec::with_capacity(n);
    let mut eps_t = Vec::with_capacity(n);
    for a in 0..n {
        eps_t.push(build(&|b| mr1.col(a * n + b).clone(), &|x| pt2.col(x * n + a).clone()));
        eps_s.push(build(&|b| pt1.col(a * n + b).clone(), &|x| mr2.col(x * n + a).clone()));
    }
    let coords = |ms: &[Multiplier], name: &str| -> Result<Vec<Vec<Scalar>>, Violation> {
        ms.iter()
            .enumerate()
            .map(|(a, x)| {
                ma.coords(x)
                    .ok_or_else(|| Violation::new(format!("{name}(a) is a multiplier"), vec![a]))
            })
            .collect()
    };
    let coords_s = coords(&eps_s, "ε_s")?;
    let coords_t = coords(&eps_t, "ε_t")?;
    let d = ma.dim();
    let image_s = Subspace::span(d, &coords_s);
    let image_t = Subspace::span(d, &coords_t);
    Ok(SourceTarget {
        eps_s,
        eps_t,
        coords_s,
        coords_t,
        image_s,
        image_t,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceTargetChecks {
    /// `ε_t(A)` and `ε_s(A)` are spanned by the right and left legs of `E`.
    pub legs: Outcome,
    /// `Δ(ε_t(a)) = E(ε_t(a)⊗1) = (ε_t(a)⊗1)E` and the source analogue.
    pub coproduct: Outcome,
    /// Both images are closed under products.
    pub subalgebras: Outcome,
    /// The images commute with each other.
    pub commute: Outcome,
    /// `aε(A) ⊆ aA` and `ε(A)a ⊆ Aa` for both maps.
    pub inclusions: Outcome,
}

impl SourceTargetChecks {
    pub fn ok(&self) -> bool {
        self.legs.is_ok()
            && self.coproduct.is_ok()
            && self.subalgebras.is_ok()
            && self.commute.is_ok()
            && self.inclusions.is_ok()
    }
}

/// Spans of `(ω(c·a)⊗ι)(E)` (right leg) and `(ι⊗ω(a·c))(E)` (left leg) for
/// coordinate functionals `ω`, from `E = Σ C[α,β] m_α⊗m_β`.
fn leg_spans(c: &CoproductData, ma: &MultiplierAlgebra, e: &CanonicalIdempotent) -> (Subspace, Subspace) {
    let n = c.n();
    let d = ma.dim();
    let alg = c.algebra();
    let coef = |a: usize, b: usize| &e.coeffs[a * d + b];
    let mcols: Vec<Vec<SparseVec>> = ma.basis().iter().map(|m| m.left.sparse_cols()).collect();
    let per: Vec<(Vec<SparseVec>, Vec<SparseVec>)> = (0..n * n)
        .into_par_iter()
        .map(|xy| {
            let (x, y) = (xy / n, xy % n);
            // x·m_γ·y for every basis multiplier m_γ
            let prods: Vec<SparseVec> = (0..d)
                .map(|g| alg.mul_sparse(&SparseVec::unit(x), &mcols[g][y]))
                .collect();
            let mut right = Vec::with_capacity(n);
            let mut left = Vec::with_capacity(n);
            for k in 0..n {
                let mut r = Accumulator::new();
                let mut l = Accumulator::new();
                for (g, p) in prods.iter().enumerate() {
                    let Some(v) = p.get_ref(k) else { continue };
                    for o in 0..d {
                        r.add_mul(o, v, coef(g, o));
                        l.add_mul(o, v, coef(o, g));
                    }
                }
                right.push(r.finish());
                left.push(l.finish());
            }
            (right, left)
        })
        .collect();
    let mut right = Vec::new();
    let mut left = Vec::new();
    for (r, l) in per {
        right.extend(r);
        left.extend(l);
    }
    (Subspace::from_sparse(d, right), Subspace::from_sparse(d, left))
}

pub fn check_source_target(
    c: &CoproductData,
    ma: &MultiplierAlgebra,
    e: &CanonicalIdempotent,
    st: &SourceTarget,
) -> SourceTargetChecks {
    let n = c.n();
    let alg = c.algebra();
    let legs = {
        let (right, left) = leg_spans(c, ma, e);
        if right != st.image_t {
            Err(Violation::new(
                format!(
                    "ε_t(A) (dim {}) = right leg of E (dim {})",
                    st.image_t.dim(),
                    right.dim()
                ),
                vec![],
            ))
        } else if left != st.image_s {
            Err(Violation::new(
                format!("ε_s(A) (dim {}) = left leg of E (dim {})", st.image_s.dim(), left.dim()),
                vec![],
            ))
        } else {
            Ok(())
        }
    };

    let coproduct = (|| {
        let ext = Extension::new(c, &e.e);
        let tag = |v: Violation, a: usize| Violation::new(v.law, vec![a]);
        for a in 0..n {
            let y = &st.eps_t[a];
            let d = ext
                .extend_multiplier(y)
                .map_err(|err| Violation::new(format!("Δ(ε_t(a)) is defined: {err}"), vec![a]))?;
            let y1 = tensor_one_left(y);
            compare_tm("Δ(ε_t(a)) = E(ε_t(a)⊗1)", &d, &e.e.product(&y1), n).map_err(|v| tag(v, a))?;
            compare_tm("Δ(ε_t(a)) = (ε_t(a)⊗1)E", &d, &y1.product(&e.e), n).map_err(|v| tag(v, a))?;
            let y = &st.eps_s[a];
            let d = ext
                .extend_multiplier(y)
                .map_err(|err| Violation::new(format!("Δ(ε_s(a)) is defined: {err}"), vec![a]))?;
            let y1: TensorMultiplier = tensor_one_right(y);
            compare_tm("Δ(ε_s(a)) = E(1⊗ε_s(a))", &d, &e.e.product(&y1), n).map_err(|v| tag(v, a))?;
            compare_tm("Δ(ε_s(a)) = (1⊗ε_s(a))E", &d, &y1.product(&e.e), n).map_err(|v| tag(v, a))?;
        }
        Ok(())
    })();

    let subalgebras = (|| {
        for (name, ms, image) in [("ε_s", &st.eps_s, &st.image_s), ("ε_t", &st.eps_t, &st.image_t)] {
            for a in 0..n {
                for b in 0..n {
                    let p = ms[a].product(&ms[b]);
                    let inside = ma
                        .coords(&p)
                        .is_some_and(|x| image.contains(&SparseVec::from_dense(&x)));
                    if !inside {
                        return Err(Violation::new(format!("{name}(a){name}(b) ∈ {name}(A)"), vec![a, b]));
                    }
                }
            }
        }
        Ok(())
    })();

    let commute = (|| {
        for a in 0..n {
            for b in 0..n {
                let x = &st.eps_s[a];
                let y = &st.eps_t[b];
                if x.product(y) != y.product(x) {
                    return Err(Violation::new("ε_s(a)ε_t(b) = ε_t(b)ε_s(a)", vec![a, b]));
                }
            }
        }
        Ok(())
    })();

    let inclusions = (|| {
        for a in 0..n {
            let ea = SparseVec::unit(a);
            let right_ideal = Subspace::from_sparse(n, (0..n).map(|x| alg.product(a, x).clone()));
            let left_ideal = Subspace::from_sparse(n, (0..n).map(|x| alg.product(x, a).clone()));
            for b in 0..n {
                for (name, m) in [("ε_s", &st.eps_s[b]), ("ε_t", &st.eps_t[b])] {
                    // a·m is the right action of m on a
                    if !right_ideal.contains(&m.right.apply_sparse(&ea)) {
                        return Err(Violation::new(format!("a{name}(A) ⊆ aA"), vec![a, b]));
                    }
                    if !left_ideal.contains(&m.left.apply_sparse(&ea)) {
                        return Err(Violation::new(format!("{name}(A)a ⊆ Aa"), vec![a, b]));
                    }
                }
            }
        }
        Ok(())
    })();

    SourceTargetChecks {
        legs,
        coproduct,
        subalgebras,
        commute,
        inclusions,
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::solve;
    use super::*;
    use crate::coalg::testing::*;

    fn st_of(s: &super::super::fixtures::Solved) -> SourceTarget {
        compute_source_target(&s.c, &s.wit.multipliers, &s.r, &s.s).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|x| Scalar::from_int(*x)).collect()
    }

    #[test]
    fn function_model_source_map() {
        // ids (i,j) ↦ 2i + j; ε_s(δ_(0,0)) is the indicator of s(q) = unit 0
        let s = solve(pair_function(2));
        let st = st_of(&s);
        let el = SourceTarget::elements(&s.wit.multipliers, &s.c, &st.eps_s).unwrap();
        assert_eq!(el[0], ints(&[1, 0, 1, 0]));
        assert_eq!(el[1], ints(&[0, 0, 0, 0]));
        assert!(check_source_target(&s.c, &s.wit.multipliers, &s.wit.idempotent, &st).ok());
    }

    #[test]
    fn convolution_model_source_and_target() {
        let s = solve(pair_convolution(2));
        let st = st_of(&s);
        let es = SourceTarget::elements(&s.wit.multipliers, &s.c, &st.eps_s).unwrap();
        let et = SourceTarget::elements(&s.wit.multipliers, &s.c, &st.eps_t).unwrap();
        for p in 0..4 {
            let (i, j) = (p / 2, p % 2);
            // λ_{s(p)} = λ_(j,j), λ_{t(p)} = λ_(i,i)
            let mut want = vec![0; 4];
            want[3 * j] = 1;
            assert_eq!(es[p], ints(&want));
            let mut want = vec![0; 4];
            want[3 * i] = 1;
            assert_eq!(et[p], ints(&want));
        }
        assert_eq!(st.image_s.dim(), 2);
        assert!(check_source_target(&s.c, &s.wit.multipliers, &s.wit.idempotent, &st).ok());
    }

    #[test]
    fn hopf_case_collapses_to_counit() {
        let s = solve(cyclic_group(3));
        let st = st_of(&s);
        let es = SourceTarget::elements(&s.wit.multipliers, &s.c, &st.eps_s).unwrap();
        for row in es {
            assert_eq!(row, ints(&[1, 0, 0]));
        }
        assert!(check_source_target(&s.c, &s.wit.multipliers, &s.wit.idempotent, &st).ok());
    }
}
