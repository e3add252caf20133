//! Exact computations with first-order differential calculi on universal
//! enveloping algebras: normal forms in the PBW basis, the consistency
//! conditions on the coefficient table, differentials, partial derivatives
//! and changes of basis.

pub mod calculus;
pub mod error;
pub mod expr;
pub mod exec;
pub mod foundations;
pub mod liealg;
pub mod matrix;
pub mod rewrite;
pub mod sampling;
pub mod solver;

pub use error::{Error, Result};
