//! Exact coefficient arithmetic: rationals and polynomials in symbolic
//! parameters.

mod poly;
mod scalar;

pub use poly::{poly_add, poly_eval, poly_mul, Monomial, ParamPoly};
pub use scalar::Scalar;

/// Assignment of rational values to named parameters.
pub type Assignment = std::collections::BTreeMap<String, Scalar>;
