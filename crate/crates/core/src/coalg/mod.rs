//! Coproducts given by their canonical maps, the counit, the canonical
//! idempotent `E`, the extension of `Δ` to multipliers and the projection
//! maps `G1`, `G2`.

mod coproduct;
mod counit;
mod econd;
mod extend;
mod gmaps;
mod idempotent;
pub mod legs;
mod verify;

pub use coproduct::{check_fullness, validate_coproduct, CoproductDiagnostics, Fullness};
pub use counit::{solve_counit, Counit};
pub use econd::{check_e_conditions, delta13_left, delta13_right, EConditions};
pub use extend::{check_extension, extend_delta, Extension, Preimage};
pub use gmaps::{check_g_laws, check_kernels, factorize_g, solve_g_maps, GLaws, KernelDiagnostics, ProjectionMaps};
pub use idempotent::{compute_e, CanonicalIdempotent};
pub use verify::{verify_wmha, WmhaOutcome, WmhaStage, WmhaWitness};

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::exactla::{Echelon, Insertion, Matrix, SparseOp, SparseVec, Subspace};
use crate::fdalg::Algebra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoalgError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("no counit: the counit equations are inconsistent")]
    NoCounit,
    #[error("counit is not unique ({0} free directions)")]
    NonUniqueCounit(usize),
    #[error("no idempotent multiplier with the ranges of T1 and T2")]
    NoSuchIdempotent,
    #[error("canonical idempotent is ambiguous ({0} free directions)")]
    AmbiguousE(usize),
    #[error("solved E is not idempotent")]
    NotIdempotent,
    #[error("extension of the coproduct is not well defined: {0}")]
    IllDefinedExtension(Violation),
    #[error("defining equations of {0} are inconsistent")]
    NoSolution(&'static str),
    #[error("{0} is not determined by its defining equations ({1} free directions)")]
    Ambiguous(&'static str, usize),
    #[error("two constructions of {0} disagree: {1}")]
    CrossCheckMismatch(&'static str, Violation),
    #[error("the product is degenerate")]
    DegenerateProduct,
}

/// A failed identity together with the basis indices where it failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub basis: Vec<usize>,
}

impl Violation {
    pub fn new(law: impl Into<String>, basis: Vec<usize>) -> Self {
        Violation { law: law.into(), basis }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.basis.iter().map(|b| b.to_string()).collect();
        write!(f, "{} at basis ({})", self.law, idx.join(","))
    }
}

pub type Outcome = Result<(), Violation>;

/// Compares two operators column by column; columns are decoded into
/// `k` basis indices of `A` for the counterexample.
pub(crate) fn compare_ops(law: &str, lhs: &SparseOp, rhs: &SparseOp, n: usize, k: usize) -> Outcome {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some(col) => Err(Violation::new(law, legs::decode(n, k, col))),
    }
}

/// Multiplier of `A⊗A` as a (left action, right action) pair of sparse operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorMultiplier {
    pub left: SparseOp,
    pub right: SparseOp,
}

impl TensorMultiplier {
    pub fn identity(nn: usize) -> Self {
        TensorMultiplier {
            left: SparseOp::identity(nn),
            right: SparseOp::identity(nn),
        }
    }

    pub fn product(&self, o: &TensorMultiplier) -> TensorMultiplier {
        TensorMultiplier {
            left: self.left.compose(&o.left),
            right: o.right.compose(&self.right),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.left.compose(&self.left) == self.left && self.right.compose(&self.right) == self.right
    }
}

/// Canonical maps `T1(a⊗b) = Δ(a)(1⊗b)`, `T2(a⊗b) = (a⊗1)Δ(b)` and the
/// optional `T3(a⊗b) = (1⊗b)Δ(a)`, `T4(a⊗b) = Δ(b)(a⊗1)`.
#[derive(Clone, Debug)]
pub struct CoproductData {
    algebra: Algebra,
    t1: SparseOp,
    t2: SparseOp,
    t3: Option<SparseOp>,
    t4: Option<SparseOp>,
    lmul: Vec<SparseOp>,
    rmul: Vec<SparseOp>,
    delta_left: OnceLock<Vec<SparseOp>>,
    delta_right: OnceLock<Vec<SparseOp>>,
}

impl CoproductData {
    pub fn new(
        algebra: Algebra,
        t1: SparseOp,
        t2: SparseOp,
        t3: Option<SparseOp>,
        t4: Option<SparseOp>,
    ) -> Result<Self, CoalgError> {
        let nn = algebra.dim() * algebra.dim();
        for (name, t) in [
            ("T1", Some(&t1)),
            ("T2", Some(&t2)),
            ("T3", t3.as_ref()),
            ("T4", t4.as_ref()),
        ] {
            if let Some(t) = t {
                if t.rows() != nn || t.ncols() != nn {
                    return Err(CoalgError::Shape(format!(
                        "{name} is {}x{}, expected {nn}x{nn}",
                        t.rows(),
                        t.ncols()
                    )));
                }
            }
        }
        let n = algebra.dim();
        let lmul = (0..n)
            .map(|i| SparseOp::from_cols(n, (0..n).map(|j| algebra.product(i, j).clone()).collect()))
            .collect();
        let rmul = (0..n)
            .map(|i| SparseOp::from_cols(n, (0..n).map(|j| algebra.product(j, i).clone()).collect()))
            .collect();
        Ok(CoproductData {
            algebra,
            t1,
            t2,
            t3,
            t4,
            lmul,
            rmul,
            delta_left: OnceLock::new(),
            delta_right: OnceLock::new(),
        })
    }

    pub fn from_matrices(
        algebra: Algebra,
        t1: &Matrix,
        t2: &Matrix,
        t3: Option<&Matrix>,
        t4: Option<&Matrix>,
    ) -> Result<Self, CoalgError> {
        CoproductData::new(
            algebra,
            SparseOp::from_matrix(t1),
            SparseOp::from_matrix(t2),
            t3.map(SparseOp::from_matrix),
            t4.map(SparseOp::from_matrix),
        )
    }

    /// Canonical maps of a coproduct on a unital algebra given as `Δ(e_i)`
    /// (columns of `delta`, vectors of `A⊗A`).
    pub fn from_delta(algebra: Algebra, delta: &SparseOp) -> Result<Self, CoalgError> {
        let n = algebra.dim();
        if delta.rows() != n * n || delta.ncols() != n {
            return Err(CoalgError::Shape(format!(
                "Δ is {}x{}, expected {}x{n}",
                delta.rows(),
                delta.ncols(),
                n * n
            )));
        }
        let tmp = CoproductData::new(
            algebra,
            SparseOp::zero(n * n, n * n),
            SparseOp::zero(n * n, n * n),
            None,
            None,
        )?;
        let mut t1 = Vec::with_capacity(n * n);
        let mut t2 = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                // Δ(a)(1⊗b) and (a⊗1)Δ(b)
                t1.push(legs::apply_single(&tmp.rmul[b], n, 2, 1, delta.col(a)));
                t2.push(legs::apply_single(&tmp.lmul[a], n, 2, 0, delta.col(b)));
            }
        }
        let t1 = SparseOp::from_cols(n * n, t1);
        let t2 = SparseOp::from_cols(n * n, t2);
        CoproductData::new(tmp.algebra, t1, t2, None, None)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn n(&self) -> usize {
        self.algebra.dim()
    }

    pub fn t1(&self) -> &SparseOp {
        &self.t1
    }

    pub fn t2(&self) -> &SparseOp {
        &self.t2
    }

    pub fn t3(&self) -> Option<&SparseOp> {
        self.t3.as_ref()
    }

    pub fn t4(&self) -> Option<&SparseOp> {
        self.t4.as_ref()
    }

    pub fn with_t1(&self, t1: SparseOp) -> CoproductData {
        CoproductData::new(
            self.algebra.clone(),
            t1,
            self.t2.clone(),
            self.t3.clone(),
            self.t4.clone(),
        )
        .expect("same shape")
    }

    pub fn with_t34(&self, t3: Option<SparseOp>, t4: Option<SparseOp>) -> CoproductData {
        CoproductData::new(self.algebra.clone(), self.t1.clone(), self.t2.clone(), t3, t4).expect("same shape")
    }

    /// `x ↦ e_i·x`.
    pub fn lmul(&self, i: usize) -> &SparseOp {
        &self.lmul[i]
    }

    /// `x ↦ x·e_i`.
    pub fn rmul(&self, i: usize) -> &SparseOp {
        &self.rmul[i]
    }

    pub fn lmuls(&self) -> &[SparseOp] {
        &self.lmul
    }

    pub fn rmuls(&self) -> &[SparseOp] {
        &self.rmul
    }

    /// Left action of `Δ(e_a)` on `A⊗A`: `c⊗d ↦ T1(a⊗d)(c⊗1)`.
    pub fn delta_left(&self, a: usize) -> &SparseOp {
        &self.delta_left.get_or_init(|| {
            let n = self.n();
            (0..n)
                .map(|a| {
                    let mut cols = Vec::with_capacity(n * n);
                    for c in 0..n {
                        for d in 0..n {
                            cols.push(legs::apply_single(&self.rmul[c], n, 2, 0, self.t1.col(a * n + d)));
                        }
                    }
                    SparseOp::from_cols(n * n, cols)
                })
                .collect()
        })[a]
    }

    /// Right action of `Δ(e_b)` on `A⊗A`: `c⊗d ↦ (1⊗d)T2(c⊗b)`.
    pub fn delta_right(&self, b: usize) -> &SparseOp {
        &self.delta_right.get_or_init(|| {
            let n = self.n();
            (0..n)
                .map(|b| {
                    let mut cols = Vec::with_capacity(n * n);
                    for c in 0..n {
                        for d in 0..n {
                            cols.push(legs::apply_single(&self.lmul[d], n, 2, 1, self.t2.col(c * n + b)));
                        }
                    }
                    SparseOp::from_cols(n * n, cols)
                })
                .collect()
        })[b]
    }

    pub fn delta(&self, a: usize) -> TensorMultiplier {
        TensorMultiplier {
            left: self.delta_left(a).clone(),
            right: self.delta_right(a).clone(),
        }
    }
}

/// Kernel of a sparse operator.
pub fn kernel(op: &SparseOp) -> Subspace {
    let mut ech = Echelon::new(op.rows());
    let mut vecs = Vec::new();
    for (j, c) in op.cols().iter().enumerate() {
        if let Insertion::Dependent(r) = ech.insert(c, &SparseVec::unit(j)) {
            vecs.push(r);
        }
    }
    Subspace::from_sparse(op.ncols(), vecs)
}

/// Column space of a sparse operator.
pub fn image(op: &SparseOp) -> Subspace {
    Subspace::from_sparse(op.rows(), op.cols().iter().cloned())
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;
    use crate::exactla::Scalar;

    /// Group algebra of ℤ/m with `Δ(g) = g⊗g`.
    pub fn cyclic_group(m: usize) -> CoproductData {
        let alg = Algebra::from_structure(
            m,
            None,
            (0..m).flat_map(|i| (0..m).map(move |j| (i, j, (i + j) % m, Scalar::from_int(1)))),
        )
        .unwrap();
        let delta = SparseOp::from_cols(m * m, (0..m).map(|g| SparseVec::unit(g * m + g)).collect());
        CoproductData::from_delta(alg, &delta).unwrap()
    }

    /// Pair groupoid on `k` points: convolution model (matrix units, `Δ(λp) = λp⊗λp`).
    pub fn pair_convolution(k: usize) -> CoproductData {
        let n = k * k;
        let mut entries = Vec::new();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    entries.push((i * k + j, j * k + l, i * k + l, Scalar::from_int(1)));
                }
            }
        }
        let alg = Algebra::from_structure(n, None, entries).unwrap();
        let delta = SparseOp::from_cols(n * n, (0..n).map(|p| SparseVec::unit(p * n + p)).collect());
        CoproductData::from_delta(alg, &delta).unwrap()
    }

    /// Pair groupoid on `k` points: function model, `Δ(δ_r) = Σ_{pq=r} δ_p⊗δ_q`.
    pub fn pair_function(k: usize) -> CoproductData {
        let n = k * k;
        let alg = Algebra::from_structure(n, None, (0..n).map(|p| (p, p, p, Scalar::from_int(1)))).unwrap();
        let mut cols = vec![Vec::new(); n];
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    // (i,j)(j,l) = (i,l)
                    cols[i * k + l].push(((i * k + j) * n + (j * k + l), Scalar::from_int(1)));
                }
            }
        }
        let delta = SparseOp::from_cols(n * n, cols.into_iter().map(SparseVec::from_entries).collect());
        CoproductData::from_delta(alg, &delta).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;

    #[test]
    fn delta_actions_of_group_algebra() {
        let c = cyclic_group(3);
        // Δ(g1)(g0⊗g2) = g1⊗g0
        let v = c.delta_left(1).apply(&SparseVec::unit(2));
        assert_eq!(v, SparseVec::unit(3));
        assert_eq!(kernel(c.t1()).dim(), 0);
        assert!(image(c.t2()).is_full());
    }

    #[test]
    fn kernel_of_function_model() {
        let c = pair_function(2);
        let k = kernel(c.t1());
        let im = image(c.t1());
        assert_eq!(k.dim() + im.dim(), 16);
        assert_eq!(im.dim(), 8);
    }
}
