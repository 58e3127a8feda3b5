//! Finite-dimensional algebras given by structure constants.

mod algebra;
mod multiplier;
mod star;

pub use algebra::{flatten, flip_map, unflatten, Algebra, AlgebraDiagnostics};
pub use multiplier::{Multiplier, MultiplierAlgebra, MultiplierViolation};
pub use star::{StarDiagnostics, StarStructure};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("the product is degenerate")]
    DegenerateProduct,
    #[error("elements belong to different algebras")]
    ParentMismatch,
}
