//! Exact verification engine for weak multiplier Hopf algebras over ℚ(i).

pub mod antipode;
pub mod coalg;
pub mod exactla;
pub mod fdalg;
pub mod groupoid;
pub mod report;

pub use exactla::{LinAlgError, Matrix, Scalar, Subspace};
