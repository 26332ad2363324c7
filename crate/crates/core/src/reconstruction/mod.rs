//! Duals, reconstruction and closed-form error bounds.

mod bounds;
mod dual;
mod scaling;

pub use bounds::{bit_budget, error_bound, BoundForm, BoundReport};
pub use dual::{build_dual, reconstruct, Dual, DualSpec};
pub use scaling::{h, scaling_entry, scaling_matrix, verify_commutation, ScalingMatrix};
