//! Decimation operators D_ρ, S_ρ, S̃_ρ, Δ, Δ̄_ρ and the identities relating them.
//!
//! Indices in doc comments are 1-based, matching the usual matrix notation; the
//! code is 0-based internally. Cyclic indices wrap mod m.

pub mod exact;
pub mod identities;
mod operator;

pub use exact::{DenseOperators, RatMatrix, Reference};
pub use identities::{
    canonical_first_order_equality, canonical_second_order_defect, delta_bar_factorization, high_order_commutation,
    identity_grid, multiplicative, non_commutation, non_commutation_closed_form, scaling_identity, second_order_defect,
    third_order_terms, IdentityOutcome, NonCommutation, SecondOrderDefect, ThirdOrderTerms, QUOTED_FORMS,
};
pub use operator::{build, decimate, decimation_matrix, DecimationPlan, OperatorKind, StructuredOperator, Variant};

use crate::error::Result;

/// Checks against the reference operators.
pub fn verify_scaling_identity(plan: &DecimationPlan) -> Result<f64> {
    scaling_identity(&Reference, plan)
}

pub fn verify_delta_bar_factorization(plan: &DecimationPlan) -> f64 {
    delta_bar_factorization(&Reference, plan)
}

pub fn verify_multiplicative(plan: &DecimationPlan, rho1: usize, rho2: usize) -> Result<f64> {
    multiplicative(&Reference, plan, rho1, rho2)
}

pub fn verify_high_order_commutation(plan: &DecimationPlan) -> Result<f64> {
    high_order_commutation(&Reference, plan)
}

pub fn verify_non_commutation(plan: &DecimationPlan) -> Result<NonCommutation> {
    non_commutation(&Reference, plan)
}

pub fn verify_second_order_defect(plan: &DecimationPlan) -> Result<SecondOrderDefect> {
    second_order_defect(&Reference, plan)
}

pub fn verify_third_order_terms(plan: &DecimationPlan) -> Result<ThirdOrderTerms> {
    third_order_terms(&Reference, plan)
}
