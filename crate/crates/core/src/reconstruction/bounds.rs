use std::collections::HashSet;
use std::f64::consts::PI;

use crate::bitcodec::component_width;
use crate::decimation::{DecimationPlan, Variant};
use crate::error::{Error, Result};
use crate::frames::{frame_variation, FrameSpec, UgfSpec};
use crate::numerics::{dagger, norm2, ComplexMatrix};
use crate::sigma_delta::Alphabet;

use super::scaling::scaling_matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundForm {
    /// Harmonic, r = 1, ρ | m, m and k even, all frequencies nonzero.
    HarmonicEven,
    /// Harmonic, r = 1, ρ | m.
    HarmonicGeneral,
    /// Harmonic, r = 1, any ρ: uses the sub-sampled canonical dual F̄.
    GeneralRho,
    /// UGF, r = 1.
    UgfFirstOrder,
    /// UGF, r = 2.
    UgfSecondOrder,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub form: BoundForm,
    pub bound_value: f64,
    pub ingredients: Vec<(&'static str, f64)>,
}

impl BoundReport {
    pub fn ingredient(&self, name: &str) -> Option<f64> {
        self.ingredients.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }

    /// Re-evaluates the closed form from the stored ingredients alone.
    pub fn recompute(&self) -> f64 {
        let g = |n: &str| self.ingredient(n).unwrap_or(f64::NAN);
        let u = g("u_inf");
        match self.form {
            BoundForm::HarmonicEven => PI * PI * (g("k") + 1.0) / 3f64.sqrt() * u * g("k") / g("m"),
            BoundForm::HarmonicGeneral => PI / 2.0 * (2.0 * PI * (g("k") + 1.0) / 3f64.sqrt() + 1.0) * u * g("k") / g("m"),
            BoundForm::GeneralRho => PI / 2.0 * (g("sigma_fbar") + g("fbar_last_column_norm")) * u / g("rho"),
            BoundForm::UgfFirstOrder => {
                PI / (2.0 * g("eta") * g("c_phi0")) * (2.0 * PI * g("max_abs_lambda") + 1.0) * u / g("rho")
            }
            BoundForm::UgfSecondOrder => {
                let eta = g("eta");
                let t = 2.0 * PI * g("max_abs_lambda") / eta;
                PI * PI / (4.0 * eta * g("c_phi0")) * (9.0 + eta * t * t) * u / (g("rho") * g("rho"))
            }
        }
    }
}

fn violated(msg: impl Into<String>) -> Error {
    Error::HypothesisViolated(msg.into())
}

fn check_ugf_regime(u: &UgfSpec, plan: &DecimationPlan) -> Result<()> {
    if !plan.divides() {
        return Err(violated("rho must divide m"));
    }
    if !u.in_theorem_regime(plan.eta) {
        return Err(violated("eigenvalues must be integers in [-eta/2, eta/2] and every base coefficient nonzero"));
    }
    let mut seen = HashSet::new();
    for &l in &u.eigenvalues {
        if !seen.insert((l.round() as i64).rem_euclid(plan.eta as i64)) {
            return Err(violated("eigenvalues must be distinct mod eta"));
        }
    }
    Ok(())
}

/// Picks the closed-form error bound whose hypotheses hold for this frame and plan.
///
/// Harmonic frames use the harmonic forms at r = 1 and are treated as tight UGFs at
/// r = 2. Nothing is returned for r ≥ 3 or the canonical variant at r ≥ 2.
pub fn error_bound(spec: &FrameSpec, plan: &DecimationPlan, u_inf: f64) -> Result<BoundReport> {
    if spec.m() != plan.m {
        return Err(Error::DimensionMismatch { expected: plan.m, actual: spec.m() });
    }
    if plan.variant == Variant::Canonical && plan.r >= 2 {
        return Err(violated("no bound for canonical decimation with r >= 2"));
    }
    let (m, k, rho, eta) = (plan.m, spec.k(), plan.rho, plan.eta);
    let mut ingredients = vec![("u_inf", u_inf), ("k", k as f64), ("m", m as f64), ("eta", eta as f64), ("rho", rho as f64)];
    let c_inv = scaling_matrix(spec, plan).inverse_norm();

    let report = match (spec.harmonic_freqs(), plan.r) {
        (Some(freqs), 1) => {
            let kk = k as i64;
            let distinct = freqs.iter().collect::<HashSet<_>>().len() == freqs.len();
            if !distinct || freqs.iter().any(|&n| 2 * n.abs() > kk) {
                return Err(violated("frequencies must be distinct integers in [-k/2, k/2]"));
            }
            if eta < k {
                return Err(violated("need eta >= k for a full rank decimated frame"));
            }
            ingredients.push(("scaling_inverse_norm", c_inv));
            if plan.divides() {
                let even = m % 2 == 0 && k % 2 == 0 && freqs.iter().all(|&n| n != 0);
                BoundReport {
                    form: if even { BoundForm::HarmonicEven } else { BoundForm::HarmonicGeneral },
                    bound_value: 0.0,
                    ingredients,
                }
            } else {
                let e = spec.build()?.e;
                let sub = ComplexMatrix::from_fn(eta, k, |i, j| e[((i + 1) * rho - 1, j)]);
                let fbar = dagger(&sub)?;
                ingredients.push(("sigma_fbar", frame_variation(&fbar)));
                ingredients.push(("fbar_last_column_norm", norm2(&fbar.column(eta - 1))));
                BoundReport { form: BoundForm::GeneralRho, bound_value: 0.0, ingredients }
            }
        }
        (_, r @ (1 | 2)) => {
            let u = spec.eigen_data();
            check_ugf_regime(&u, plan)?;
            if r == 2 && u.eigenvalues.contains(&0.0) {
                return Err(violated("second order bound needs nonzero eigenvalues"));
            }
            ingredients.push(("c_phi0", u.c_phi0()));
            ingredients.push(("max_abs_lambda", u.max_abs_lambda()));
            ingredients.push(("scaling_inverse_norm", c_inv));
            let form = if r == 1 { BoundForm::UgfFirstOrder } else { BoundForm::UgfSecondOrder };
            BoundReport { form, bound_value: 0.0, ingredients }
        }
        _ => return Err(violated(format!("no closed-form bound for r = {}", plan.r))),
    };
    let bound_value = report.recompute();
    Ok(BoundReport { bound_value, ..report })
}

/// Bits needed to store D_ρS^r q at the theorem-level rate: η·c·⌈r·log₂(2L·range)⌉ with
/// range = ρ for r = 1 and m otherwise, c = 2 for complex samples.
pub fn bit_budget(plan: &DecimationPlan, a: &Alphabet, complex_mode: bool) -> u64 {
    let c = if complex_mode { 2 } else { 1 };
    plan.eta as u64 * c * component_width(plan.m, plan.rho, plan.r, a.levels) as u64
}
