//! Generalized inverses `R1`, `R2`, the antipode, source and target maps,
//! and the regular, weak Hopf, star and opposite-algebra consequences.

mod appendix;
mod construct;
mod identities;
mod regular;
mod rmaps;
mod source_target;
mod star;
mod thm29;
mod weak_hopf;

pub use appendix::{check_appendix, AppendixChecks};
pub use construct::{antipode_parts, check_compatibility, compute_antipode, AntipodeWitness};
pub use identities::{
    anti_coproduct, check_antipode_identities, check_convolution_identities, check_remark_equivalence,
    AntipodeIdentities,
};
pub use regular::{check_f_formulas, classify_regular, FMultipliers, RegularOutcome, RegularSuite};
pub use rmaps::{build_generalized_inverses, check_r_laws, dense_cross_check, GeneralizedInverses, RLaws};
pub use source_target::{check_source_target, compute_source_target, SourceTarget, SourceTargetChecks};
pub use star::{check_star_compat, StarChecks};
pub use thm29::{e_from_element, verify_via_antipode, AntipodeCandidateReport};
pub use weak_hopf::{classify_weak_hopf, WeakHopfOutcome};

use thiserror::Error;

use crate::coalg::{legs, TensorMultiplier, Violation};
use crate::exactla::{Matrix, SparseOp, SparseVec};
use crate::fdalg::{Algebra, Multiplier};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AntipodeError {
    #[error("projection data is inconsistent: {0}")]
    BadProjections(Violation),
    #[error("S1 and S2 disagree: {0}")]
    AntipodesDisagree(Violation),
    #[error("S({0}) is not a multiplier")]
    NotAMultiplier(usize),
}

/// Multiplication `m: A⊗A → A`.
pub fn multiplication(alg: &Algebra) -> SparseOp {
    let n = alg.dim();
    SparseOp::from_cols(n, (0..n * n).map(|x| alg.product(x / n, x % n).clone()).collect())
}

/// Flip `σ` on `A⊗A`.
pub fn flip_op(n: usize) -> SparseOp {
    SparseOp::from_cols(
        n * n,
        (0..n * n).map(|x| SparseVec::unit((x % n) * n + x / n)).collect(),
    )
}

pub(crate) fn sp(m: &Matrix) -> SparseOp {
    SparseOp::from_matrix(m)
}

/// `x⊗y ↦ S(x)y`.
pub(crate) fn phi(s: &[Multiplier]) -> SparseOp {
    let n = s.len();
    SparseOp::from_cols(n, (0..n * n).map(|x| s[x / n].left.col_sparse(x % n)).collect())
}

/// `x⊗y ↦ xS(y)`.
pub(crate) fn psi(s: &[Multiplier]) -> SparseOp {
    let n = s.len();
    SparseOp::from_cols(n, (0..n * n).map(|x| s[x % n].right.col_sparse(x / n)).collect())
}

/// `m ⊗ 1` as a multiplier of `A⊗A`.
pub(crate) fn tensor_one_left(m: &Multiplier) -> TensorMultiplier {
    let id = SparseOp::identity(m.dim());
    TensorMultiplier {
        left: sp(&m.left).kron(&id),
        right: sp(&m.right).kron(&id),
    }
}

/// `1 ⊗ m` as a multiplier of `A⊗A`.
pub(crate) fn tensor_one_right(m: &Multiplier) -> TensorMultiplier {
    let id = SparseOp::identity(m.dim());
    TensorMultiplier {
        left: id.kron(&sp(&m.left)),
        right: id.kron(&sp(&m.right)),
    }
}

/// Image of a multiplier of `A⊗A` under an automorphism `w`.
pub(crate) fn transport(x: &TensorMultiplier, w: &SparseOp, w_inv: &SparseOp) -> TensorMultiplier {
    TensorMultiplier {
        left: w.compose(&x.left).compose(w_inv),
        right: w.compose(&x.right).compose(w_inv),
    }
}

/// Image of a multiplier of `A⊗A` under an anti-automorphism `w`.
pub(crate) fn anti_transport(x: &TensorMultiplier, w: &SparseOp, w_inv: &SparseOp) -> TensorMultiplier {
    TensorMultiplier {
        left: w.compose(&x.right).compose(w_inv),
        right: w.compose(&x.left).compose(w_inv),
    }
}

/// Extension of a bijective antipode matrix to multipliers:
/// `S(m) = (S R_m S⁻¹, S L_m S⁻¹)`.
pub(crate) fn antipode_on_multiplier(m: &Multiplier, s: &Matrix, s_inv: &Matrix) -> Multiplier {
    Multiplier::new(s.mul(&m.right).mul(s_inv), s.mul(&m.left).mul(s_inv))
}

/// Compares two multipliers of `A⊗A`.
pub(crate) fn compare_tm(law: &str, x: &TensorMultiplier, y: &TensorMultiplier, n: usize) -> Result<(), Violation> {
    if let Some(c) = x.left.first_difference(&y.left) {
        return Err(Violation::new(format!("{law} (left action)"), legs::decode(n, 2, c)));
    }
    if let Some(c) = x.right.first_difference(&y.right) {
        return Err(Violation::new(format!("{law} (right action)"), legs::decode(n, 2, c)));
    }
    Ok(())
}

/// Compares two multipliers of `A`.
pub(crate) fn compare_mult(law: &str, x: &Multiplier, y: &Multiplier, idx: Vec<usize>) -> Result<(), Violation> {
    if x.left != y.left || x.right != y.right {
        return Err(Violation::new(law, idx));
    }
    Ok(())
}

pub(crate) fn combine_mults(v: &[crate::exactla::Scalar], ms: &[Multiplier], n: usize) -> Multiplier {
    let mut acc = Multiplier::new(Matrix::zeros(n, n), Matrix::zeros(n, n));
    for (c, m) in v.iter().zip(ms) {
        if !num_traits::Zero::is_zero(c) {
            acc = acc.add(&m.scale(c));
        }
    }
    acc
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::coalg::{verify_wmha, CoproductData, WmhaWitness};

    pub struct Solved {
        pub c: CoproductData,
        pub wit: WmhaWitness,
        pub r: GeneralizedInverses,
        pub s: AntipodeWitness,
    }

    pub fn solve(c: CoproductData) -> Solved {
        let wit = verify_wmha(&c).witness().expect("model passes");
        let r = build_generalized_inverses(&c, &wit.idempotent.e, &wit.g).unwrap();
        let s = compute_antipode(&c, &wit.counit, &r, &wit.multipliers).unwrap();
        Solved { c, wit, r, s }
    }
}
