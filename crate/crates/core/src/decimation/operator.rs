//! Matrix-free decimation operators. Every application is O(m).

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, ComplexVector, C64};

use super::exact::{DenseOperators, Reference};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// D_ρ S_ρʳ with the non-circulant averager.
    Alternative,
    /// D_ρ S̃_ρʳ with the circulant averager.
    Canonical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DecimationPlan {
    pub m: usize,
    pub rho: usize,
    pub r: usize,
    pub variant: Variant,
    pub eta: usize,
}

impl DecimationPlan {
    pub fn new(m: usize, rho: usize, r: usize, variant: Variant) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidPlan("m must be positive".into()));
        }
        if rho == 0 || rho > m {
            return Err(Error::InvalidPlan(format!("rho = {rho} must lie in 1..={m}")));
        }
        if r == 0 {
            return Err(Error::InvalidPlan("order r must be at least 1".into()));
        }
        Ok(Self { m, rho, r, variant, eta: m / rho })
    }

    pub fn alternative(m: usize, rho: usize, r: usize) -> Result<Self> {
        Self::new(m, rho, r, Variant::Alternative)
    }

    /// ρ divides m, the setting of every structural identity.
    pub fn divides(&self) -> bool {
        self.m % self.rho == 0
    }

    pub fn with_order(&self, r: usize) -> Result<Self> {
        Self::new(self.m, self.rho, r, self.variant)
    }

    pub(crate) fn require_divides(&self) -> Result<()> {
        if self.divides() {
            Ok(())
        } else {
            Err(Error::HypothesisViolated(format!("rho = {} does not divide m = {}", self.rho, self.m)))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorKind {
    SRho,
    STildeRho,
    DRho,
    Delta,
    DeltaBarRho,
    /// Product of factors, leftmost applied last.
    Composition(Vec<StructuredOperator>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructuredOperator {
    pub kind: OperatorKind,
    pub m: usize,
    pub rho: usize,
}

/// Builds one of the elementary operators on length-`plan.m` vectors.
pub fn build(kind: OperatorKind, plan: &DecimationPlan) -> Result<StructuredOperator> {
    DecimationPlan::new(plan.m, plan.rho, plan.r.max(1), plan.variant)?;
    if let OperatorKind::Composition(factors) = &kind {
        if factors.is_empty() {
            return Err(Error::InvalidPlan("empty composition".into()));
        }
        for w in factors.windows(2) {
            if w[0].cols() != w[1].rows() {
                return Err(Error::DimensionMismatch { expected: w[0].cols(), actual: w[1].rows() });
            }
        }
    }
    Ok(StructuredOperator { kind, m: plan.m, rho: plan.rho })
}

impl StructuredOperator {
    pub fn compose(factors: Vec<StructuredOperator>) -> Result<Self> {
        let m = factors.last().map_or(1, |f| f.cols());
        let rho = factors.first().map_or(1, |f| f.rho);
        let plan = DecimationPlan::new(m.max(1), 1, 1, Variant::Alternative)?;
        let mut op = build(OperatorKind::Composition(factors), &plan)?;
        op.rho = rho;
        Ok(op)
    }

    pub fn rows(&self) -> usize {
        match &self.kind {
            OperatorKind::DRho => self.m / self.rho,
            OperatorKind::Composition(f) => f[0].rows(),
            _ => self.m,
        }
    }

    pub fn cols(&self) -> usize {
        match &self.kind {
            OperatorKind::Composition(f) => f[f.len() - 1].cols(),
            _ => self.m,
        }
    }

    /// Dense form for tests and identity checks, from the exact definitions.
    pub fn dense(&self) -> ComplexMatrix {
        let r = Reference;
        match &self.kind {
            OperatorKind::SRho => r.s(self.m, self.rho).to_complex(),
            OperatorKind::STildeRho => r.s_tilde(self.m, self.rho).to_complex(),
            OperatorKind::DRho => r.d(self.m, self.rho).to_complex(),
            OperatorKind::Delta => r.delta(self.m).to_complex(),
            OperatorKind::DeltaBarRho => r.delta_bar(self.m, self.rho).to_complex(),
            OperatorKind::Composition(f) => {
                f.iter().skip(1).fold(f[0].dense(), |acc, g| acc.mul(&g.dense()))
            }
        }
    }

    /// op·v without materializing the matrix.
    pub fn apply(&self, v: &[C64]) -> Result<ComplexVector> {
        if v.len() != self.cols() {
            return Err(Error::DimensionMismatch { expected: self.cols(), actual: v.len() });
        }
        let rho = self.rho;
        Ok(match &self.kind {
            OperatorKind::SRho => divide(window_sums(v, rho, Variant::Alternative), rho as f64),
            OperatorKind::STildeRho => divide(window_sums(v, rho, Variant::Canonical), rho as f64),
            OperatorKind::DRho => subsample(v, rho),
            OperatorKind::Delta => (0..v.len()).map(|i| if i == 0 { v[0] } else { v[i] - v[i - 1] }).collect(),
            OperatorKind::DeltaBarRho => {
                let m = v.len();
                (0..m)
                    .map(|i| {
                        let l = i + 1;
                        if l == rho {
                            v[i]
                        } else {
                            v[i] - v[(i + m - rho % m) % m]
                        }
                    })
                    .collect()
            }
            OperatorKind::Composition(f) => {
                let mut w = v.to_vec();
                for g in f.iter().rev() {
                    w = g.apply(&w)?;
                }
                w
            }
        })
    }
}

/// ρ·S_ρ v (alternative) or ρ·S̃_ρ v (canonical): plain window sums, no division.
///
/// Sums of alphabet values are exact in binary floating point, which keeps the
/// decimated samples on their lattice.
pub(crate) fn window_sums(v: &[C64], rho: usize, variant: Variant) -> ComplexVector {
    let m = v.len();
    let mut p = Vec::with_capacity(m + 1);
    p.push(C64::new(0.0, 0.0));
    for &x in v {
        let last = *p.last().unwrap();
        p.push(last + x);
    }
    (1..=m)
        .map(|l| {
            if l >= rho {
                p[l] - p[l - rho]
            } else {
                match variant {
                    Variant::Alternative => -(p[m - rho + l] - p[l]),
                    Variant::Canonical => p[l] + (p[m] - p[m - rho + l]),
                }
            }
        })
        .collect()
}

fn divide(v: ComplexVector, by: f64) -> ComplexVector {
    v.into_iter().map(|z| C64::new(z.re / by, z.im / by)).collect()
}

fn subsample(v: &[C64], rho: usize) -> ComplexVector {
    (1..=v.len() / rho).map(|l| v[rho * l - 1]).collect()
}

/// D_ρ S^r q for the plan's variant. The r window passes are accumulated unscaled and
/// divided by ρʳ once at the end.
pub fn decimate(q: &[C64], plan: &DecimationPlan) -> Result<ComplexVector> {
    if q.len() != plan.m {
        return Err(Error::DimensionMismatch { expected: plan.m, actual: q.len() });
    }
    let mut w = q.to_vec();
    for _ in 0..plan.r {
        w = window_sums(&w, plan.rho, plan.variant);
    }
    let scale = (plan.rho as f64).powi(plan.r as i32);
    Ok(divide(subsample(&w, plan.rho), scale))
}

/// Dense D_ρ S^r for the plan (η×m).
pub fn decimation_matrix(plan: &DecimationPlan) -> ComplexMatrix {
    let r = Reference;
    let s = match plan.variant {
        Variant::Alternative => r.s(plan.m, plan.rho),
        Variant::Canonical => r.s_tilde(plan.m, plan.rho),
    };
    r.d(plan.m, plan.rho).mul(&s.pow(plan.r)).to_complex()
}
