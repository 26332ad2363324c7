//! Exact rational dense matrices for structural identity checks.
//!
//! Every operator here has entries that are integers divided by a power of ρ,
//! so a shared i128 denominator keeps all products exact at the sizes we test.

use crate::numerics::{ComplexMatrix, C64};

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Matrix with entries `num[i]/den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    num: Vec<i128>,
    den: i128,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, num: vec![0; rows * cols], den: 1 }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, 1, |i, j| (i == j) as i128)
    }

    /// Entries f(i, j)/den with 0-based indices.
    pub fn from_fn(rows: usize, cols: usize, den: i128, mut f: impl FnMut(usize, usize) -> i128) -> Self {
        assert!(den > 0);
        let mut num = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                num.push(f(i, j));
            }
        }
        Self { rows, cols, num, den }.reduced()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// (numerator, denominator) of entry (i, j), 0-based, not reduced.
    pub fn entry(&self, i: usize, j: usize) -> (i128, i128) {
        (self.num[i * self.cols + j], self.den)
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.num[i * self.cols + j] as f64 / self.den as f64
    }

    pub fn set(&mut self, i: usize, j: usize, num: i128, den: i128) {
        let l = self.den / gcd(self.den, den) * den;
        let scale = l / self.den;
        for x in self.num.iter_mut() {
            *x *= scale;
        }
        self.den = l;
        self.num[i * self.cols + j] = num * (l / den);
        *self = self.clone().reduced();
    }

    fn reduced(mut self) -> Self {
        let g = self.num.iter().fold(self.den, |g, &x| gcd(g, x));
        if g > 1 {
            for x in self.num.iter_mut() {
                *x /= g;
            }
            self.den /= g;
        }
        self
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut num = vec![0i128; self.rows * rhs.cols];
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.num[i * self.cols + t];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    num[i * rhs.cols + j] += a * rhs.num[t * rhs.cols + j];
                }
            }
        }
        Self { rows: self.rows, cols: rhs.cols, num, den: self.den * rhs.den }.reduced()
    }

    /// Product of a chain, left to right.
    pub fn chain(factors: &[&RatMatrix]) -> Self {
        let mut it = factors.iter();
        let first = (*it.next().expect("empty chain")).clone();
        it.fold(first, |acc, f| acc.mul(f))
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }

    fn combine(&self, rhs: &Self, sign: i128) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let l = self.den / gcd(self.den, rhs.den) * rhs.den;
        let (a, b) = (l / self.den, l / rhs.den);
        let num = self.num.iter().zip(&rhs.num).map(|(x, y)| x * a + sign * y * b).collect();
        Self { rows: self.rows, cols: self.cols, num, den: l }.reduced()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, 1)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, -1)
    }

    pub fn scale(&self, num: i128, den: i128) -> Self {
        assert!(den != 0);
        let s = den.signum();
        Self { rows: self.rows, cols: self.cols, num: self.num.iter().map(|x| x * num * s).collect(), den: self.den * den.abs() }
            .reduced()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&x| x == 0)
    }

    pub fn max_abs(&self) -> f64 {
        self.num.iter().map(|x| x.abs()).max().unwrap_or(0) as f64 / self.den as f64
    }

    /// Max |A − B|, computed exactly and converted at the end.
    pub fn deviation(&self, rhs: &Self) -> f64 {
        self.sub(rhs).max_abs()
    }

    /// Nonzero entries as (row, col, value), 1-based indices.
    pub fn nonzeros(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.num[i * self.cols + j] != 0 {
                    out.push((i + 1, j + 1, self.value(i, j)));
                }
            }
        }
        out
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| C64::new(self.value(i, j), 0.0))
    }
}

/// Dense forms of the decimation building blocks.
///
/// The defaults are transcribed directly from the operator definitions. Overriding a
/// method lets tests inject a corrupted operator and confirm the checks notice.
pub trait DenseOperators: Sync {
    /// S_ρ: rows l ≥ ρ average v_{l−ρ+1..l}; rows l < ρ are −(1/ρ)Σ v_{l+1..m−ρ+l}.
    fn s(&self, m: usize, rho: usize) -> RatMatrix {
        RatMatrix::from_fn(m, m, rho as i128, |i, j| {
            let (l, s) = (i + 1, j + 1);
            if l >= rho {
                (s + rho > l && s <= l) as i128
            } else {
                -((s > l && s <= m - rho + l) as i128)
            }
        })
    }

    /// Circulant S̃_ρ: row l averages v_{l−t} for t = 0..ρ−1, indices mod m.
    fn s_tilde(&self, m: usize, rho: usize) -> RatMatrix {
        RatMatrix::from_fn(m, m, rho as i128, |i, j| (0..rho).filter(|&t| (i + m * rho - t) % m == j).count() as i128)
    }

    /// L_ρ = S̃_ρ − S_ρ: 1/ρ on every entry of the first ρ−1 rows.
    fn l(&self, m: usize, rho: usize) -> RatMatrix {
        RatMatrix::from_fn(m, m, rho as i128, |i, _| (i + 1 < rho) as i128)
    }

    /// D_ρ: η×m, ones at (l, ρl).
    fn d(&self, m: usize, rho: usize) -> RatMatrix {
        RatMatrix::from_fn(m / rho, m, 1, |i, j| (j + 1 == rho * (i + 1)) as i128)
    }

    /// Backward difference: 1 on the diagonal, −1 below it.
    fn delta(&self, n: usize) -> RatMatrix {
        RatMatrix::from_fn(n, n, 1, |i, j| if i == j { 1 } else if i == j + 1 { -1 } else { 0 })
    }

    /// Lower triangular ones.
    fn delta_inv(&self, n: usize) -> RatMatrix {
        RatMatrix::from_fn(n, n, 1, |i, j| (j <= i) as i128)
    }

    /// Δ̄_ρ: column s ≠ m has +1 at row s and −1 at row s+ρ (mod m); column m is e_m.
    fn delta_bar(&self, m: usize, rho: usize) -> RatMatrix {
        RatMatrix::from_fn(m, m, 1, |i, j| {
            let (l, s) = (i + 1, j + 1);
            let plus = (l == s) as i128;
            let minus = if s != m && (s + rho - 1) % m + 1 == l { 1 } else { 0 };
            plus - minus
        })
    }

    /// All-ones column at position m−ρ.
    fn ones_column(&self, m: usize, rho: usize) -> RatMatrix {
        RatMatrix::from_fn(m, m, 1, |_, j| (j + 1 + rho == m) as i128)
    }
}

/// The operators exactly as defined.
#[derive(Debug, Clone, Copy, Default)]
pub struct Reference;

impl DenseOperators for Reference {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic() {
        let a = RatMatrix::from_fn(1, 2, 2, |_, j| j as i128 + 1); // (1/2, 1)
        let b = RatMatrix::from_fn(1, 2, 3, |_, _| 1); // (1/3, 1/3)
        let s = a.add(&b);
        assert_eq!(s.entry(0, 0), (5, 6));
        assert_eq!(s.entry(0, 1), (8, 6));
        assert!((a.deviation(&b) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn hand_transcribed_small_cases() {
        let r = Reference;
        // m = 4, ρ = 2
        let st = r.s_tilde(4, 2);
        assert_eq!((0..4).map(|j| st.value(0, j)).collect::<Vec<_>>(), vec![0.5, 0.0, 0.0, 0.5]);
        let s = r.s(4, 2);
        assert_eq!((0..4).map(|j| s.value(0, j)).collect::<Vec<_>>(), vec![0.0, -0.5, -0.5, 0.0]);
        assert_eq!(r.s(5, 1), RatMatrix::identity(5));
        assert_eq!(r.s_tilde(5, 1), RatMatrix::identity(5));
        assert_eq!(r.d(5, 1), RatMatrix::identity(5));
        let d = r.d(6, 2);
        assert_eq!(d.nonzeros(), vec![(1, 2, 1.0), (2, 4, 1.0), (3, 6, 1.0)]);
        assert_eq!(r.delta_bar(7, 1), r.delta(7));
    }

    #[test]
    fn circulant_is_alternative_plus_rank_one_rows() {
        let r = Reference;
        for m in 1..=12 {
            for rho in 1..=m {
                assert_eq!(r.s_tilde(m, rho), r.s(m, rho).add(&r.l(m, rho)), "m={m} rho={rho}");
            }
        }
    }
}
