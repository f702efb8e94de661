//! Chains of compact matrix Lie algebras `h ⊂ k ⊂ g` and the
//! small-deformation nonnegative-curvature criterion
//! `|[X^m, Y^m]^m| ≤ C |[X, Y]|` on `p = m ⊕ s`.

pub mod algebra;
pub mod catalog;
pub mod certfile;
pub mod criterion;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod subspace;
pub mod tolerances;

pub use error::{Error, Result};
pub use matrix::MatrixElement;
pub use scalar::{Field, Quaternion};
pub use subspace::Subspace;
