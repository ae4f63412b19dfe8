//! Exact computations with torsion classes, bricks, wide subcategories and
//! two-term silting mutation over quiver algebras with monomial relations,
//! over a prime field.

pub mod algebra;
pub mod error;
pub mod homext;
pub mod indec;
pub mod lattice;
pub mod linalg;
pub mod rep;
pub mod silting;
pub mod torsion;

pub use algebra::{AlgebraFamily, ModuleKind, Quiver, QuiverAlgebra};
pub use error::{Error, Result};
pub use linalg::{Field, Mat};
pub use rep::{Mor, Rep};
