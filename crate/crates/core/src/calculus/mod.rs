//! First-order differential calculi: the coefficient table `A`, its
//! consistency conditions, the differential and partial derivatives, the
//! representation `ρ`, and changes of basis.

pub mod catalog;
mod conditions;
mod differential;
mod json;
mod rho;
mod spec;
mod transform;

pub use catalog::{calculus, calculus_on, default_window};
pub use conditions::{
    check_pbw_conditions, check_pbw_conditions_with, quadratic_residual, linear_residual, QuadraticFailure, LinearFailure,
    PbwReport,
};
pub use differential::{differential, partials, tensor_differential};
pub use json::{AlgebraRef, CalculusFile};
pub use rho::{
    check_representation, check_representation_with, invariants, rho_apply, rho_matrix, CocycleFailure, RepFailure,
    RepReport, RhoInvariants,
};
pub use spec::{CalculusSpec, MU};
pub use transform::BasisChange;
