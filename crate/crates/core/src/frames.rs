//! Harmonic and unitarily generated frames, stored as m×k analysis operators.
//!
//! A unitarily generated frame (UGF) is {U_{l/m} φ₀} with U_t = exp(2πiΩt). We keep it
//! in the eigenbasis of Ω: with eigenvalues λ_s and c_s = v_s*φ₀ the analysis operator is
//! Φ_{l,s} = conj(c_s)·exp(−2πi λ_s l/m), l = 1..m. Harmonic frames are the special case
//! c_s = 1/√k, λ = n.

use std::collections::HashSet;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{self, hermitian_eig, inner, norm2, ComplexMatrix, ComplexVector, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicFrameSpec {
    pub m: usize,
    pub k: usize,
    pub freqs: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UgfSpec {
    pub m: usize,
    pub eigenvalues: Vec<f64>,
    /// Coordinates of φ₀ in the eigenbasis.
    pub base_coeffs: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FrameSpec {
    Harmonic(HarmonicFrameSpec),
    Ugf(UgfSpec),
    /// The "(l+1)(j+1)" exponential frame with 0-based l, j.
    AppendixB { m: usize, k: usize },
}

#[derive(Debug, Clone)]
pub struct FrameMatrix {
    pub e: ComplexMatrix,
    pub spec: FrameSpec,
}

impl FrameMatrix {
    pub fn m(&self) -> usize {
        self.e.rows()
    }
    pub fn k(&self) -> usize {
        self.e.cols()
    }
    /// y = Ex.
    pub fn analyze(&self, x: &[C64]) -> Result<ComplexVector> {
        self.e.mul_vec(x)
    }
}

/// exp(−2πi·t/m) with t reduced mod m in integer arithmetic first.
fn unit_root(t: i128, m: usize) -> C64 {
    let m = m as i128;
    let r = t.rem_euclid(m);
    C64::from_polar(1.0, -2.0 * PI * (r as f64) / (m as f64))
}

fn ugf_phase(lambda: f64, l: usize, m: usize) -> C64 {
    if lambda.fract() == 0.0 && lambda.abs() < 1e15 {
        unit_root(lambda as i128 * l as i128, m)
    } else {
        C64::from_polar(1.0, -2.0 * PI * lambda * (l as f64) / (m as f64))
    }
}

impl HarmonicFrameSpec {
    pub fn new(m: usize, freqs: Vec<i64>) -> Self {
        Self { m, k: freqs.len(), freqs }
    }

    /// Distinct integers in [−k/2, k/2].
    pub fn in_theorem_regime(&self) -> bool {
        let k = self.k as i64;
        distinct(&self.freqs).is_ok() && self.freqs.iter().all(|&n| 2 * n.abs() <= k)
    }

    pub fn as_ugf(&self) -> UgfSpec {
        let c = C64::new(1.0 / (self.k as f64).sqrt(), 0.0);
        UgfSpec { m: self.m, eigenvalues: self.freqs.iter().map(|&n| n as f64).collect(), base_coeffs: vec![c; self.k] }
    }
}

impl UgfSpec {
    pub fn k(&self) -> usize {
        self.eigenvalues.len()
    }

    /// C_{φ₀} = min |c_s|².
    pub fn c_phi0(&self) -> f64 {
        self.base_coeffs.iter().map(|c| c.norm_sqr()).fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_lambda(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max)
    }

    pub fn has_integer_eigenvalues(&self) -> bool {
        self.eigenvalues.iter().all(|l| (l - l.round()).abs() <= 1e-9)
    }

    /// Integer eigenvalues in [−η/2, η/2] and a base vector with no zero coefficient.
    pub fn in_theorem_regime(&self, eta: usize) -> bool {
        self.has_integer_eigenvalues()
            && self.eigenvalues.iter().all(|l| 2.0 * l.abs() <= eta as f64 + 1e-9)
            && self.c_phi0() > 0.0
    }
}

impl FrameSpec {
    pub fn m(&self) -> usize {
        match self {
            FrameSpec::Harmonic(h) => h.m,
            FrameSpec::Ugf(u) => u.m,
            FrameSpec::AppendixB { m, .. } => *m,
        }
    }

    pub fn k(&self) -> usize {
        match self {
            FrameSpec::Harmonic(h) => h.k,
            FrameSpec::Ugf(u) => u.k(),
            FrameSpec::AppendixB { k, .. } => *k,
        }
    }

    /// Eigen-data (λ, c) for every frame kind. The `appendix_b` frame is exactly the
    /// harmonic frame with frequencies 1..k.
    pub fn eigen_data(&self) -> UgfSpec {
        match self {
            FrameSpec::Harmonic(h) => h.as_ugf(),
            FrameSpec::Ugf(u) => u.clone(),
            FrameSpec::AppendixB { m, k } => HarmonicFrameSpec::new(*m, (1..=*k as i64).collect()).as_ugf(),
        }
    }

    /// Harmonic frequency list when the frame is (equivalent to) a harmonic frame.
    pub fn harmonic_freqs(&self) -> Option<Vec<i64>> {
        match self {
            FrameSpec::Harmonic(h) => Some(h.freqs.clone()),
            FrameSpec::AppendixB { k, .. } => Some((1..=*k as i64).collect()),
            FrameSpec::Ugf(_) => None,
        }
    }

    pub fn build(&self) -> Result<FrameMatrix> {
        match self {
            FrameSpec::Harmonic(h) => harmonic_frame(h),
            FrameSpec::Ugf(u) => ugf_frame(u),
            FrameSpec::AppendixB { m, k } => Ok(appendix_b_frame(*m, *k)),
        }
    }

    /// Same family at a different frame size m (frequencies/eigendata unchanged).
    pub fn with_m(&self, m: usize) -> FrameSpec {
        match self {
            FrameSpec::Harmonic(h) => FrameSpec::Harmonic(HarmonicFrameSpec { m, ..h.clone() }),
            FrameSpec::Ugf(u) => FrameSpec::Ugf(UgfSpec { m, ..u.clone() }),
            FrameSpec::AppendixB { k, .. } => FrameSpec::AppendixB { m, k: *k },
        }
    }
}

fn distinct(freqs: &[i64]) -> Result<()> {
    let mut seen = HashSet::new();
    for &n in freqs {
        if !seen.insert(n) {
            return Err(Error::DuplicateFrequencies(n));
        }
    }
    Ok(())
}

/// E_{l,j} = exp(−2πi n_j l/m)/√k for l = 1..m.
pub fn harmonic_frame(spec: &HarmonicFrameSpec) -> Result<FrameMatrix> {
    distinct(&spec.freqs)?;
    if spec.freqs.len() != spec.k {
        return Err(Error::DimensionMismatch { expected: spec.k, actual: spec.freqs.len() });
    }
    let s = 1.0 / (spec.k as f64).sqrt();
    let e = ComplexMatrix::from_fn(spec.m, spec.k, |i, j| unit_root(spec.freqs[j] as i128 * (i as i128 + 1), spec.m) * s);
    Ok(FrameMatrix { e, spec: FrameSpec::Harmonic(spec.clone()) })
}

/// E_{l,j} = exp(−2πi (l+1)(j+1)/m)/√k with 0-based l, j.
///
/// Rows are 1-based harmonic rows for frequencies 1..k. Relative to frequencies
/// 2..k+1 the rows differ only by the phase e^{−2πil/m}.
pub fn appendix_b_frame(m: usize, k: usize) -> FrameMatrix {
    let s = 1.0 / (k as f64).sqrt();
    let e = ComplexMatrix::from_fn(m, k, |l, j| unit_root((l as i128 + 1) * (j as i128 + 1), m) * s);
    FrameMatrix { e, spec: FrameSpec::AppendixB { m, k } }
}

/// Φ_{l,s} = conj(c_s)·exp(−2πi λ_s l/m), l = 1..m.
pub fn ugf_frame(spec: &UgfSpec) -> Result<FrameMatrix> {
    if spec.base_coeffs.len() != spec.eigenvalues.len() {
        return Err(Error::DimensionMismatch { expected: spec.eigenvalues.len(), actual: spec.base_coeffs.len() });
    }
    let sq: f64 = spec.base_coeffs.iter().map(|c| c.norm_sqr()).sum();
    if (sq - 1.0).abs() > numerics::tol::UNIT_NORM {
        return Err(Error::NonUnitBaseVector(sq));
    }
    let e = ComplexMatrix::from_fn(spec.m, spec.k(), |i, s| spec.base_coeffs[s].conj() * ugf_phase(spec.eigenvalues[s], i + 1, spec.m));
    Ok(FrameMatrix { e, spec: FrameSpec::Ugf(spec.clone()) })
}

/// Eigen-decomposes Ω and expresses φ₀ in its eigenbasis: c_s = v_s*φ₀.
pub fn ugf_from_generator(omega: &ComplexMatrix, phi0: &[C64], m: usize) -> Result<UgfSpec> {
    if phi0.len() != omega.rows() {
        return Err(Error::DimensionMismatch { expected: omega.rows(), actual: phi0.len() });
    }
    let n = norm2(phi0);
    if (n * n - 1.0).abs() > numerics::tol::UNIT_NORM {
        return Err(Error::NonUnitBaseVector(n * n));
    }
    let eig = hermitian_eig(omega, 1e-10)?;
    let base_coeffs = (0..omega.rows()).map(|s| inner(&eig.eigenvectors.column(s), phi0)).collect();
    Ok(UgfSpec { m, eigenvalues: eig.eigenvalues, base_coeffs })
}

/// σ(A) = Σ_t ‖A_t − A_{t+1}‖₂ over consecutive columns.
pub fn frame_variation(a: &ComplexMatrix) -> f64 {
    (0..a.cols().saturating_sub(1))
        .map(|t| (0..a.rows()).map(|i| (a[(i, t)] - a[(i, t + 1)]).norm_sqr()).sum::<f64>().sqrt())
        .sum()
}

/// Extreme eigenvalues of E*E, computed as squared extreme singular values.
pub fn frame_bounds(f: &FrameMatrix) -> (f64, f64) {
    matrix_frame_bounds(&f.e)
}

pub fn matrix_frame_bounds(e: &ComplexMatrix) -> (f64, f64) {
    let sv = numerics::singular_values(e);
    let b = sv.first().map_or(0.0, |s| s * s);
    let a = if e.rows() < e.cols() { 0.0 } else { sv.last().map_or(0.0, |s| s * s) };
    (a, b)
}

/// True iff the frame vectors sum to zero: ‖Σ_l row_l‖₂ ≤ 1e−9·m.
pub fn zero_sum_check(f: &FrameMatrix) -> bool {
    let m = f.m();
    let sums: ComplexVector = (0..f.k()).map(|j| (0..m).map(|i| f.e[(i, j)]).sum()).collect();
    norm2(&sums) <= 1e-9 * m as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_entry_by_hand() {
        let f = harmonic_frame(&HarmonicFrameSpec::new(4, vec![0, 1])).unwrap();
        let expected = C64::new(0.0, -1.0 / 2f64.sqrt());
        assert!((f.e[(0, 1)] - expected).norm() < 1e-15);
    }

    #[test]
    fn square_dft_is_unitary() {
        let f = harmonic_frame(&HarmonicFrameSpec::new(6, (0..6).collect())).unwrap();
        let g = f.e.adjoint().mul(&f.e).scale(C64::new(6.0 / 6.0, 0.0));
        // columns have norm² m/k = 1
        assert!(g.max_abs_diff(&ComplexMatrix::identity(6)) < 1e-10);
    }

    #[test]
    fn duplicate_frequencies_rejected() {
        assert_eq!(harmonic_frame(&HarmonicFrameSpec::new(4, vec![1, 1])).unwrap_err(), Error::DuplicateFrequencies(1));
    }

    #[test]
    fn appendix_b_one_by_one() {
        let f = appendix_b_frame(1, 1);
        assert!((f.e[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn variation_examples() {
        let a = ComplexMatrix::from_real(2, 3, &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0]).unwrap();
        assert!((frame_variation(&a) - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        let flat = ComplexMatrix::from_real(2, 3, &[1.0; 6]).unwrap();
        assert_eq!(frame_variation(&flat), 0.0);
    }

    #[test]
    fn zero_sum_examples() {
        assert!(zero_sum_check(&harmonic_frame(&HarmonicFrameSpec::new(8, vec![1, -2, 3])).unwrap()));
        assert!(!zero_sum_check(&harmonic_frame(&HarmonicFrameSpec::new(8, vec![0, 1])).unwrap()));
        let one = ugf_frame(&UgfSpec { m: 1, eigenvalues: vec![0.0], base_coeffs: vec![C64::new(1.0, 0.0)] }).unwrap();
        assert!(!zero_sum_check(&one));
    }

    #[test]
    fn trivial_ugf_is_ones() {
        let f = ugf_frame(&UgfSpec { m: 5, eigenvalues: vec![0.0], base_coeffs: vec![C64::new(1.0, 0.0)] }).unwrap();
        assert!(f.e.data().iter().all(|z| (z - C64::new(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn non_unit_base_rejected() {
        let spec = UgfSpec { m: 5, eigenvalues: vec![0.0, 1.0], base_coeffs: vec![C64::new(1.0, 0.0); 2] };
        assert!(matches!(ugf_frame(&spec), Err(Error::NonUnitBaseVector(_))));
    }
}
