use crate::decimation::{decimate, decimation_matrix, DecimationPlan};
use crate::error::{Error, Result};
use crate::frames::FrameMatrix;
use crate::numerics::{dagger, singular_values, tol, ComplexMatrix, ComplexVector, C64};

#[derive(Debug, Clone, PartialEq)]
pub enum DualSpec {
    /// Canonical dual E†.
    Plain,
    /// (D_ρ S^r E)† D_ρ S^r for the plan's variant and order.
    Decimated(DecimationPlan),
    /// β-dual: V = I_k ⊗ (β⁻¹, …, β^{−m/k}); needs k | m and β > 1.
    Beta { beta: f64 },
    /// β = 1 with every block entry k/m, i.e. block averaging.
    OneDual,
    /// Any V with m columns such that VE has rank k.
    CustomV(ComplexMatrix),
}

#[derive(Debug, Clone)]
enum Pre {
    Identity(usize),
    Decimation(DecimationPlan),
    Matrix(ComplexMatrix),
}

/// A V-dual F = (VE)†V kept in factored form: `factor` = (VE)† and a pre-processing V.
#[derive(Debug, Clone)]
pub struct Dual {
    pub factor: ComplexMatrix,
    pre: Pre,
}

impl Dual {
    /// Length of the sample vector `reconstruct` expects.
    pub fn input_len(&self) -> usize {
        self.factor.cols()
    }

    /// Frame size m the dual was built for.
    pub fn m(&self) -> usize {
        match &self.pre {
            Pre::Identity(m) => *m,
            Pre::Decimation(p) => p.m,
            Pre::Matrix(v) => v.cols(),
        }
    }

    /// V·q: decimated samples for decimated duals, q itself for the plain dual.
    pub fn samples(&self, q: &[C64]) -> Result<ComplexVector> {
        match &self.pre {
            Pre::Identity(m) => {
                if q.len() != *m {
                    return Err(Error::DimensionMismatch { expected: *m, actual: q.len() });
                }
                Ok(q.to_vec())
            }
            Pre::Decimation(plan) => decimate(q, plan),
            Pre::Matrix(v) => v.mul_vec(q),
        }
    }

    /// F·q.
    pub fn reconstruct_quantized(&self, q: &[C64]) -> Result<ComplexVector> {
        reconstruct(self, &self.samples(q)?)
    }

    /// The full k×m dual (VE)†V.
    pub fn composed(&self) -> ComplexMatrix {
        match &self.pre {
            Pre::Identity(_) => self.factor.clone(),
            Pre::Decimation(plan) => self.factor.mul(&decimation_matrix(plan)),
            Pre::Matrix(v) => self.factor.mul(v),
        }
    }
}

fn beta_v(m: usize, k: usize, weight: impl Fn(usize) -> f64) -> ComplexMatrix {
    let b = m / k;
    ComplexMatrix::from_fn(k, m, |i, j| {
        if j / b == i {
            C64::new(weight(j % b + 1), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

pub fn build_dual(frame: &FrameMatrix, spec: &DualSpec) -> Result<Dual> {
    let (m, k) = (frame.m(), frame.k());
    let v_dual = |v: ComplexMatrix| -> Result<Dual> {
        if v.cols() != m {
            return Err(Error::DimensionMismatch { expected: m, actual: v.cols() });
        }
        let factor = dagger(&v.mul(&frame.e))?;
        Ok(Dual { factor, pre: Pre::Matrix(v) })
    };
    match spec {
        DualSpec::Plain => Ok(Dual { factor: dagger(&frame.e)?, pre: Pre::Identity(m) }),
        DualSpec::Decimated(plan) => {
            if plan.m != m {
                return Err(Error::DimensionMismatch { expected: m, actual: plan.m });
            }
            let cols = (0..k).map(|j| decimate(&frame.e.column(j), plan)).collect::<Result<Vec<_>>>()?;
            let dse = ComplexMatrix::from_columns(&cols)?;
            // A column killed by a zero of the scaling factor only vanishes up to rounding,
            // so measure against the sub-sampled frame rather than against DSE itself.
            let sub = ComplexMatrix::from_fn(plan.eta, k, |i, j| frame.e[((i + 1) * plan.rho - 1, j)]);
            let smallest = singular_values(&dse).last().copied().unwrap_or(0.0);
            let scale = sub.frobenius();
            if dse.rows() < k || smallest <= tol::RANK * scale {
                return Err(Error::RankDeficient { ratio: if scale > 0.0 { smallest / scale } else { 0.0 } });
            }
            let factor = dagger(&dse)?;
            Ok(Dual { factor, pre: Pre::Decimation(*plan) })
        }
        DualSpec::Beta { beta } => {
            if m % k != 0 {
                return Err(Error::HypothesisViolated(format!("beta dual needs k | m (k = {k}, m = {m})")));
            }
            if !(*beta > 1.0) {
                return Err(Error::HypothesisViolated(format!("beta dual needs beta > 1, got {beta}")));
            }
            v_dual(beta_v(m, k, |t| beta.powi(-(t as i32))))
        }
        DualSpec::OneDual => {
            if m % k != 0 {
                return Err(Error::HypothesisViolated(format!("block averaging needs k | m (k = {k}, m = {m})")));
            }
            let w = k as f64 / m as f64;
            v_dual(beta_v(m, k, |_| w))
        }
        DualSpec::CustomV(v) => v_dual(v.clone()),
    }
}

/// x̃ = F·samples, where samples already went through the dual's pre-processing.
pub fn reconstruct(dual: &Dual, samples: &[C64]) -> Result<ComplexVector> {
    dual.factor.mul_vec(samples)
}
