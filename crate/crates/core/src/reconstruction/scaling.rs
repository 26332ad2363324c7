use std::f64::consts::PI;

use crate::decimation::{build, decimate, DecimationPlan, OperatorKind};
use crate::error::{Error, Result};
use crate::frames::{ugf_frame, FrameMatrix, FrameSpec, UgfSpec};
use crate::numerics::{ComplexMatrix, C64};

/// Diagonal of C̄ in the frame eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingMatrix {
    pub diag: Vec<C64>,
}

impl ScalingMatrix {
    pub fn as_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_diag(&self.diag)
    }

    /// ‖C̄⁻¹‖₂ = 1/min|c̄_j|.
    pub fn inverse_norm(&self) -> f64 {
        1.0 / self.diag.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
    }

    pub fn pow(&self, r: usize) -> ScalingMatrix {
        ScalingMatrix { diag: self.diag.iter().map(|z| z.powi(r as i32)).collect() }
    }
}

fn is_multiple_of_m(lambda: f64, m: usize) -> bool {
    let t = lambda / m as f64;
    (t - t.round()).abs() < 1e-12
}

/// e^{iπ(ρ−1)λ/m} · sin(ρλπ/m) / (ρ sin(λπ/m)), and 1 when λ ≡ 0 mod m.
pub fn scaling_entry(lambda: f64, m: usize, rho: usize) -> C64 {
    if is_multiple_of_m(lambda, m) {
        return C64::new(1.0, 0.0);
    }
    let (mf, rf) = (m as f64, rho as f64);
    let amp = (rf * lambda * PI / mf).sin() / (rf * (lambda * PI / mf).sin());
    C64::from_polar(1.0, PI * (rf - 1.0) * lambda / mf) * amp
}

pub fn scaling_matrix(spec: &FrameSpec, plan: &DecimationPlan) -> ScalingMatrix {
    let ugf = spec.eigen_data();
    ScalingMatrix { diag: ugf.eigenvalues.iter().map(|&l| scaling_entry(l, plan.m, plan.rho)).collect() }
}

fn apply_columns(e: &ComplexMatrix, f: impl Fn(&[C64]) -> Result<Vec<C64>>) -> Result<ComplexMatrix> {
    let cols = (0..e.cols()).map(|j| f(&e.column(j))).collect::<Result<Vec<_>>>()?;
    ComplexMatrix::from_columns(&cols)
}

/// Checks the frame/averaging commutation relation that fits the frame and plan.
///
/// Harmonic frames: S_ρE = EC̄ − K, where K is m/(ρ√k) on rows 1..ρ−1 of every
/// constant (frequency ≡ 0 mod m) column. UGF with r = 1: D_ρS_ρΦ_m = Φ_η C̄, needs ρ | m.
/// UGF with r ≥ 2: S_ρΦ = ΦC̄ and D_ρS_ρʳΦ_m = Φ_η C̄ʳ, needs integer λ with none ≡ 0 mod m.
pub fn verify_commutation(frame: &FrameMatrix, plan: &DecimationPlan) -> Result<f64> {
    if frame.m() != plan.m {
        return Err(Error::DimensionMismatch { expected: plan.m, actual: frame.m() });
    }
    let c = scaling_matrix(&frame.spec, plan);
    let s = build(OperatorKind::SRho, plan)?;
    let se = apply_columns(&frame.e, |v| s.apply(v))?;
    match &frame.spec {
        FrameSpec::Harmonic(_) | FrameSpec::AppendixB { .. } => {
            let freqs = frame.spec.harmonic_freqs().expect("harmonic");
            let k = frame.k();
            let kval = plan.m as f64 / (plan.rho as f64 * (k as f64).sqrt());
            let mut rhs = frame.e.mul(&c.as_matrix());
            for (j, &n) in freqs.iter().enumerate() {
                if n.rem_euclid(plan.m as i64) == 0 {
                    for i in 0..plan.rho - 1 {
                        rhs[(i, j)] -= kval;
                    }
                }
            }
            Ok(se.max_abs_diff(&rhs))
        }
        FrameSpec::Ugf(u) => {
            let eta_frame = |m: usize| ugf_frame(&UgfSpec { m, ..u.clone() });
            if plan.r == 1 {
                plan_divides(plan)?;
                let dse = apply_columns(&frame.e, |v| decimate(v, plan))?;
                let rhs = eta_frame(plan.eta)?.e.mul(&c.as_matrix());
                Ok(dse.max_abs_diff(&rhs))
            } else {
                plan_divides(plan)?;
                if !u.has_integer_eigenvalues() {
                    return Err(Error::HypothesisViolated("eigenvalues must be integers".into()));
                }
                if u.eigenvalues.iter().any(|&l| is_multiple_of_m(l.round(), plan.m)) {
                    return Err(Error::HypothesisViolated("an eigenvalue is a multiple of m".into()));
                }
                let first = se.max_abs_diff(&frame.e.mul(&c.as_matrix()));
                let dsr = apply_columns(&frame.e, |v| decimate(v, plan))?;
                let rhs = eta_frame(plan.eta)?.e.mul(&c.pow(plan.r).as_matrix());
                Ok(first.max(dsr.max_abs_diff(&rhs)))
            }
        }
    }
}

fn plan_divides(plan: &DecimationPlan) -> Result<()> {
    if plan.divides() {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(format!("rho = {} does not divide m = {}", plan.rho, plan.m)))
    }
}

/// h_ρ(x) = sin(ρx)/(ρ sin x), the modulus of a scaling entry at x = λπ/m.
pub fn h(rho: usize, x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    (rho as f64 * x).sin() / (rho as f64 * x.sin())
}
