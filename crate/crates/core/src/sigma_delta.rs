//! Mid-rise quantizer and greedy r-th order Σ∆.

use crate::error::{Error, Result};
use crate::frames::{zero_sum_check, FrameMatrix};
use crate::numerics::{norm_inf, ComplexVector, C64};

/// Mid-rise alphabet {(2j+1)δ/2 : −L ≤ j ≤ L−1}, optionally complexified componentwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alphabet {
    pub levels: u32,
    pub delta: f64,
    pub complex_mode: bool,
}

impl Alphabet {
    pub fn new(levels: u32, delta: f64, complex_mode: bool) -> Self {
        assert!(levels >= 1, "alphabet needs L >= 1");
        assert!(delta > 0.0 && delta.is_finite(), "alphabet needs a positive gap");
        Self { levels, delta, complex_mode }
    }

    /// Largest level magnitude plus δ/2, i.e. Lδ. Inputs beyond this saturate.
    pub fn range(&self) -> f64 {
        self.levels as f64 * self.delta
    }

    /// Level index j of the nearest level; ties go to the larger level.
    pub fn level_index(&self, t: f64) -> i64 {
        let l = self.levels as i64;
        let j = (t / self.delta).floor();
        if j.is_nan() {
            return 0;
        }
        (j.clamp(-(l as f64), (l - 1) as f64)) as i64
    }

    pub fn level(&self, j: i64) -> f64 {
        (2 * j + 1) as f64 * self.delta / 2.0
    }

    /// Q₀ on one real component.
    pub fn quantize_real(&self, t: f64) -> f64 {
        self.level(self.level_index(t))
    }

    pub fn contains(&self, z: C64) -> bool {
        let ok = |t: f64| {
            let j = self.level_index(t);
            self.level(j) == t
        };
        ok(z.re) && if self.complex_mode { ok(z.im) } else { z.im == 0.0 }
    }
}

/// Nearest alphabet point, componentwise. Real mode drops the imaginary part.
pub fn round_off(v: C64, a: &Alphabet) -> C64 {
    let re = a.quantize_real(v.re);
    let im = if a.complex_mode { a.quantize_real(v.im) } else { 0.0 };
    C64::new(re, im)
}

#[derive(Debug, Clone)]
pub struct QuantizationRun {
    pub y: ComplexVector,
    pub q: ComplexVector,
    pub u: ComplexVector,
    pub order: usize,
    pub u_inf: f64,
    pub overloaded: bool,
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Greedy Σ∆ of order r with zero initial state:
/// s_n = Σ_{l=1}^r (−1)^{l+1} C(r,l) u_{n−l}, q_n = Q₀(s_n + y_n), u_n = s_n + y_n − q_n.
pub fn sigma_delta(y: &[C64], r: usize, a: &Alphabet) -> Result<QuantizationRun> {
    let m = y.len();
    if r == 0 || m < r {
        return Err(Error::OrderExceedsLength { order: r, len: m });
    }
    let coeffs: Vec<f64> = (1..=r).map(|l| if l % 2 == 1 { binomial(r, l) } else { -binomial(r, l) }).collect();
    let mut q = Vec::with_capacity(m);
    let mut u: ComplexVector = Vec::with_capacity(m);
    let mut overloaded = false;
    let lim = a.range();
    for n in 0..m {
        let mut s = C64::new(0.0, 0.0);
        for (l, &c) in coeffs.iter().enumerate() {
            if n > l {
                s += u[n - l - 1] * c;
            }
        }
        let arg = s + y[n];
        if arg.re.abs() > lim || (a.complex_mode && arg.im.abs() > lim) {
            overloaded = true;
        }
        let qn = round_off(arg, a);
        q.push(qn);
        u.push(arg - qn);
    }
    let u_inf = norm_inf(&u);
    Ok(QuantizationRun { y: y.to_vec(), q, u, order: r, u_inf, overloaded })
}

/// Applies the backward difference Δ (zero initial value) `times` times.
pub fn backward_difference(v: &[C64], times: usize) -> ComplexVector {
    let mut w = v.to_vec();
    for _ in 0..times {
        for n in (1..w.len()).rev() {
            w[n] = w[n] - w[n - 1];
        }
    }
    w
}

/// ‖(y − q) − Δʳu‖_∞.
pub fn residual_check(run: &QuantizationRun) -> f64 {
    let du = backward_difference(&run.u, run.order);
    run.y
        .iter()
        .zip(&run.q)
        .zip(&du)
        .map(|((y, q), d)| (y - q - d).norm())
        .fold(0.0, f64::max)
}

/// Final state of a first order run on a zero-sum frame, measured componentwise:
/// max(|Re u_m|, |Im u_m|). Expected 0 for even m and δ/2 for odd m.
pub fn parity_endpoint(run: &QuantizationRun, frame: &FrameMatrix) -> Result<f64> {
    if run.order != 1 {
        return Err(Error::HypothesisViolated(format!("parity endpoint needs r = 1, got {}", run.order)));
    }
    if run.u.len() != frame.m() {
        return Err(Error::DimensionMismatch { expected: frame.m(), actual: run.u.len() });
    }
    if !zero_sum_check(frame) {
        return Err(Error::HypothesisViolated("frame vectors do not sum to zero".into()));
    }
    let um = run.u[run.u.len() - 1];
    Ok(um.re.abs().max(um.im.abs()))
}
