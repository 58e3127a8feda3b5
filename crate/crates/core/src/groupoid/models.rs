use std::fmt;
use std::str::FromStr;

use crate::coalg::{CoproductData, TensorMultiplier};
use crate::exactla::{Matrix, Scalar, SparseOp, SparseVec};
use crate::fdalg::{Algebra, StarStructure};

use super::FiniteGroupoid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelKind {
    /// Functions on the groupoid with pointwise product.
    Function,
    /// Groupoid algebra with the convolution product.
    Convolution,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Function => "function",
            ModelKind::Convolution => "convolution",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "function" => Ok(ModelKind::Function),
            "convolution" => Ok(ModelKind::Convolution),
            _ => Err(format!("unknown model {s:?}, expected function or convolution")),
        }
    }
}

/// Known answers computed from the groupoid alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleWitnesses {
    pub e: TensorMultiplier,
    pub g1: SparseOp,
    pub g2: SparseOp,
    pub f1: TensorMultiplier,
    pub f2: TensorMultiplier,
    pub f3: TensorMultiplier,
    pub f4: TensorMultiplier,
    pub counit: Vec<Scalar>,
    pub antipode: Matrix,
    pub unit: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct GroupoidModel {
    pub kind: ModelKind,
    pub groupoid: FiniteGroupoid,
    pub coproduct: CoproductData,
    /// `Δ(e_p)` as columns of `A⊗A`.
    pub delta: SparseOp,
    pub star: StarStructure,
    pub oracle: OracleWitnesses,
}

fn one() -> Scalar {
    Scalar::from_int(1)
}

/// Diagonal operator on `A⊗A` keeping `e_p⊗e_q` when `keep(p, q)`.
fn diag(n: usize, keep: impl Fn(usize, usize) -> bool) -> SparseOp {
    SparseOp::from_cols(
        n * n,
        (0..n * n)
            .map(|x| {
                if keep(x / n, x % n) {
                    SparseVec::unit(x)
                } else {
                    SparseVec::new()
                }
            })
            .collect(),
    )
}

fn diag_pair(n: usize, left: impl Fn(usize, usize) -> bool, right: impl Fn(usize, usize) -> bool) -> TensorMultiplier {
    TensorMultiplier {
        left: diag(n, left),
        right: diag(n, right),
    }
}

fn op_from(n: usize, f: impl Fn(usize, usize) -> Option<(usize, usize)>) -> SparseOp {
    SparseOp::from_cols(
        n * n,
        (0..n * n)
            .map(|x| match f(x / n, x % n) {
                Some((p, q)) => SparseVec::unit(p * n + q),
                None => SparseVec::new(),
            })
            .collect(),
    )
}

fn inversion(g: &FiniteGroupoid) -> Matrix {
    let n = g.len();
    Matrix::from_fn(n, n, |r, c| if g.inverse(c) == r { one() } else { Scalar::from_int(0) })
}

/// Functions on `G`: `δ_p δ_q = [p = q] δ_p`, `Δ(δ_r) = Σ_{pq = r} δ_p⊗δ_q`.
pub fn function_algebra(g: &FiniteGroupoid) -> GroupoidModel {
    let n = g.len();
    let (s, t, inv) = (|p| g.source(p), |p| g.target(p), |p| g.inverse(p));
    let alg =
        Algebra::from_structure(n, Some(g.ids().to_vec()), (0..n).map(|p| (p, p, p, one()))).expect("indices in range");
    let mut delta = vec![Vec::new(); n];
    for p in 0..n {
        for q in 0..n {
            if let Some(r) = g.compose(p, q) {
                delta[r].push((p * n + q, one()));
            }
        }
    }
    let delta = SparseOp::from_cols(n * n, delta.into_iter().map(SparseVec::from_entries).collect());
    // T1(δp⊗δq) = δ_{pq⁻¹}⊗δ_q, T2(δp⊗δq) = δp⊗δ_{p⁻¹q}; T3 = T1, T4 = T2 by commutativity
    let t1 = op_from(n, |p, q| g.compose(p, inv(q)).map(|r| (r, q)));
    let t2 = op_from(n, |p, q| g.compose(inv(p), q).map(|r| (p, r)));
    let coproduct = CoproductData::new(alg, t1.clone(), t2.clone(), Some(t1), Some(t2)).expect("square operators");
    let composable = |p: usize, q: usize| s(p) == t(q);
    let same_source = |p: usize, q: usize| s(p) == s(q);
    let same_target = |p: usize, q: usize| t(p) == t(q);
    let oracle = OracleWitnesses {
        e: diag_pair(n, composable, composable),
        g1: diag(n, same_source),
        g2: diag(n, same_target),
        f1: diag_pair(n, same_source, same_source),
        f2: diag_pair(n, same_target, same_target),
        f3: diag_pair(n, same_source, same_source),
        f4: diag_pair(n, same_target, same_target),
        counit: (0..n).map(|p| Scalar::from_int(g.is_unit(p) as i64)).collect(),
        antipode: inversion(g),
        unit: vec![one(); n],
    };
    GroupoidModel {
        kind: ModelKind::Function,
        groupoid: g.clone(),
        coproduct,
        delta,
        star: StarStructure::coefficient_conjugation(n),
        oracle,
    }
}

/// Groupoid algebra: `λ_p λ_q = λ_{pq}` or `0`, `Δ(λ_p) = λ_p⊗λ_p`,
/// `λ_p* = λ_{p⁻¹}`.
pub fn convolution_algebra(g: &FiniteGroupoid) -> GroupoidModel {
    let n = g.len();
    let (s, t) = (|p| g.source(p), |p| g.target(p));
    let mut entries = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if let Some(r) = g.compose(p, q) {
                entries.push((p, q, r, one()));
            }
        }
    }
    let alg = Algebra::from_structure(n, Some(g.ids().to_vec()), entries).expect("indices in range");
    let delta = SparseOp::from_cols(n * n, (0..n).map(|p| SparseVec::unit(p * n + p)).collect());
    let t1 = op_from(n, |p, q| g.compose(p, q).map(|r| (p, r)));
    let t2 = op_from(n, |p, q| g.compose(p, q).map(|r| (r, q)));
    let t3 = op_from(n, |p, q| g.compose(q, p).map(|r| (p, r)));
    let t4 = op_from(n, |p, q| g.compose(q, p).map(|r| (r, q)));
    let coproduct = CoproductData::new(alg, t1, t2, Some(t3), Some(t4)).expect("square operators");
    let units = g.units();
    let same_target = |p: usize, q: usize| t(p) == t(q);
    let same_source = |p: usize, q: usize| s(p) == s(q);
    let s_to_t = |p: usize, q: usize| s(p) == t(q);
    let t_to_s = |p: usize, q: usize| t(p) == s(q);
    let oracle = OracleWitnesses {
        // Σ_e λe⊗λe multiplies λp⊗λq from the left by [t(p) = t(q)], from the right by [s(p) = s(q)]
        e: diag_pair(n, same_target, same_source),
        g1: diag(n, s_to_t),
        g2: diag(n, s_to_t),
        f1: diag_pair(n, t_to_s, s_to_t),
        f2: diag_pair(n, s_to_t, t_to_s),
        f3: diag_pair(n, t_to_s, s_to_t),
        f4: diag_pair(n, s_to_t, t_to_s),
        counit: vec![one(); n],
        antipode: inversion(g),
        unit: (0..n).map(|p| Scalar::from_int(units.contains(&p) as i64)).collect(),
    };
    GroupoidModel {
        kind: ModelKind::Convolution,
        groupoid: g.clone(),
        coproduct,
        delta,
        star: StarStructure::new(inversion(g)),
        oracle,
    }
}

impl GroupoidModel {
    pub fn build(kind: ModelKind, g: &FiniteGroupoid) -> Self {
        match kind {
            ModelKind::Function => function_algebra(g),
            ModelKind::Convolution => convolution_algebra(g),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::preset;
    use super::*;
    use crate::coalg::verify_wmha;

    fn pair(k: usize) -> FiniteGroupoid {
        preset(&format!("pair:{k}")).unwrap().finite().unwrap()
    }

    #[test]
    fn function_model_oracle_counts() {
        let m = function_algebra(&pair(2));
        let rank = |op: &SparseOp| op.cols().iter().filter(|c| !c.is_zero()).count();
        assert_eq!(rank(&m.oracle.e.left), 8);
        assert_eq!(rank(&m.oracle.f1.left), 8);
        // ε(δ_p) = 1 iff p is a unit
        assert_eq!(m.oracle.counit.iter().filter(|c| **c == one()).count(), 2);
        assert!(m.oracle.unit.iter().all(|c| *c == one()));
    }

    #[test]
    fn canonical_maps_agree_with_delta() {
        for g in [pair(2), preset("bundle:cyclic:2:2").unwrap().finite().unwrap()] {
            for m in [function_algebra(&g), convolution_algebra(&g)] {
                let from_delta = CoproductData::from_delta(m.coproduct.algebra().clone(), &m.delta).unwrap();
                assert_eq!(from_delta.t1(), m.coproduct.t1());
                assert_eq!(from_delta.t2(), m.coproduct.t2());
            }
        }
    }

    #[test]
    fn both_models_verify() {
        for m in [function_algebra(&pair(2)), convolution_algebra(&pair(2))] {
            let o = verify_wmha(&m.coproduct);
            assert!(o.passed(), "{} fails at {:?}", m.kind, o.first_failure());
        }
    }

    #[test]
    fn convolution_of_pair_groupoid_is_matrix_units() {
        let m = convolution_algebra(&pair(2));
        let alg = m.coproduct.algebra();
        // λ(0,1)λ(1,0) = λ(0,0), λ(0,1)λ(0,1) = 0
        assert_eq!(*alg.product(1, 2), SparseVec::unit(0));
        assert!(alg.product(1, 1).is_zero());
        assert!(alg.validate().unit.is_some());
    }

    #[test]
    fn model_names_parse() {
        assert_eq!("function".parse::<ModelKind>(), Ok(ModelKind::Function));
        assert!("dual".parse::<ModelKind>().is_err());
    }
}
