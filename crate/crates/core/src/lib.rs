//! jcubic: an exact-arithmetic workbench for composition algebras, cubic
//! Jordan algebras (Hermitian 3x3 algebras, Tits constructions, isotopes),
//! their quadratic-form invariants, homogeneity criteria, and valuation
//! data over a small tower of coefficient fields.
//!
//! Everything is exact: rationals use big integers, finite fields reduced
//! residues, Laurent series carry explicit precision windows. No floating
//! point anywhere.

pub mod cli;
pub mod clifford;
pub mod comp_alg;
pub mod cubic_jordan;
pub mod error;
pub mod fields;
pub mod fpoly;
pub mod homogeneity;
pub mod literal;
pub mod linalg;
pub mod mpoly;
pub mod quadforms;
pub mod report;
pub mod rng;
pub mod specdoc;
pub mod valuation;

pub use error::{Error, Result};
pub use fields::{Field, Scalar, SquareVerdict};
