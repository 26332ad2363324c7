//! Dense complex linear algebra: just enough for frames, duals and norm checks.
//!
//! Matrices are small (at most a few thousand rows times tens of columns), so
//! everything is row-major `Vec<Complex64>` with straightforward loops.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Sample vectors, signals and coefficient vectors.
pub type ComplexVector = Vec<C64>;

/// Numerical tolerances used across the crate. Kept here so they can be audited in one place.
pub mod tol {
    /// ‖V*V − I‖_max bound for eigenvectors.
    pub const EIG_ORTHO: f64 = 1e-10;
    /// ‖HV − VΛ‖_max bound, relative to ‖H‖₂.
    pub const EIG_RESIDUAL: f64 = 1e-9;
    /// Singular value ratio below which a matrix counts as rank deficient.
    pub const RANK: f64 = 1e-12;
    /// A†A = I accuracy.
    pub const DAGGER: f64 = 1e-9;
    /// Relative accuracy of the power iteration.
    pub const SPECTRAL: f64 = 1e-8;
    /// Exact structural identities (entries are small multiples of 1/ρʳ).
    pub const EXACT: f64 = 1e-14;
    /// Trigonometric commutation relations.
    pub const TRIG: f64 = 1e-10;
    /// Closed form evaluation of scaling matrix entries.
    pub const CLOSED_FORM: f64 = 1e-12;
    /// Lattice snapping in the codec, relative.
    pub const LATTICE: f64 = 1e-9;
    /// Σ∆ residual identity, scaled by m·max(1, ‖y‖_∞).
    pub const RESIDUAL: f64 = 1e-10;
    /// Unit norm check for base vectors.
    pub const UNIT_NORM: f64 = 1e-10;
    /// Jacobi sweep cap.
    pub const MAX_SWEEPS: usize = 100;
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and NaN/inf.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, actual: data.len() });
        }
        if let Some(i) = data.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        Self::new(rows, cols, values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_diag(d: &[C64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &z) in d.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of equal length).
    pub fn from_columns(columns: &[ComplexVector]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        for c in columns {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, actual: c.len() });
            }
        }
        Self::new(rows, cols, (0..rows * cols).map(|t| columns[t % cols][t / cols]).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ComplexVector {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C64]) {
        assert_eq!(v.len(), self.rows);
        for (i, &z) in v.iter().enumerate() {
            self[(i, j)] = z;
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Matrix product; panics on inner dimension mismatch (a programming error).
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self[(i, t)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let row = &rhs.data[t * rhs.cols..(t + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Result<ComplexVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Entrywise max |A − B|; panics if shapes differ.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data.iter().zip(&rhs.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_slice(&self, start: usize, end: usize) -> Self {
        Self { rows: end - start, cols: self.cols, data: self.data[start * self.cols..end * self.cols].to_vec() }
    }
}

pub fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn norm_inf(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn sub_vec(a: &[C64], b: &[C64]) -> ComplexVector {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// ⟨a, b⟩ = Σ conj(a_i) b_i.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEig {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unitary, eigenvectors as columns in the same order as `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

fn hermitian_asymmetry(h: &ComplexMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..h.rows {
        for j in i..h.cols {
            worst = worst.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Sweeps visit (p, q) in row order so the result is reproducible bit for bit.
pub fn hermitian_eig(h: &ComplexMatrix, tol: f64) -> Result<HermitianEig> {
    if h.rows != h.cols {
        return Err(Error::DimensionMismatch { expected: h.rows, actual: h.cols });
    }
    let asym = hermitian_asymmetry(h);
    if asym > tol {
        return Err(Error::NotHermitian { asymmetry: asym });
    }
    let n = h.rows;
    // symmetrize so tiny asymmetries do not bias the iteration
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius().max(f64::MIN_POSITIVE);

    let off = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off(&a) > f64::EPSILON * scale {
        if sweeps == tol::MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let b = apq.norm();
                if b <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let phase = apq / b; // e^{iφ}
                let zeta = (aqq - app) / (2.0 * b);
                let t = if zeta >= 0.0 { 1.0 } else { -1.0 } / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let pc = phase.conj();
                // W = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
                let w_pp = C64::new(c, 0.0);
                let w_pq = C64::new(s, 0.0);
                let w_qp = pc * (-s);
                let w_qq = pc * c;
                for i in 0..n {
                    let (x, y) = (a[(i, p)], a[(i, q)]);
                    a[(i, p)] = x * w_pp + y * w_qp;
                    a[(i, q)] = x * w_pq + y * w_qq;
                }
                for j in 0..n {
                    let (x, y) = (a[(p, j)], a[(q, j)]);
                    a[(p, j)] = w_pp.conj() * x + w_qp.conj() * y;
                    a[(q, j)] = w_pq.conj() * x + w_qq.conj() * y;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for i in 0..n {
                    let (x, y) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = x * w_pp + y * w_qp;
                    v[(i, q)] = x * w_pq + y * w_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEig { eigenvalues, eigenvectors })
}

/// Singular values, descending, via one-sided (Hestenes) Jacobi.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    // work on whichever orientation has fewer columns
    let work = if a.cols <= a.rows { a.clone() } else { a.adjoint() };
    let (m, n) = (work.rows, work.cols);
    let mut cols: Vec<ComplexVector> = (0..n).map(|j| work.column(j)).collect();
    for _ in 0..tol::MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma = inner(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g <= 1e-15 * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 { 1.0 } else { -1.0 } / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let pc = phase.conj();
                for i in 0..m {
                    let x = cols[p][i];
                    let y = cols[q][i] * pc;
                    cols[p][i] = x * c - y * s;
                    cols[q][i] = x * s + y * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|c| norm2(c)).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Thin Householder QR of a tall matrix: returns (Q m×n with orthonormal columns, R n×n upper).
pub fn householder_qr(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let (m, n) = (a.rows, a.cols);
    assert!(m >= n, "householder_qr needs rows >= cols");
    let mut r = a.clone();
    let mut reflectors: Vec<ComplexVector> = Vec::with_capacity(n);
    for j in 0..n {
        let x: ComplexVector = (j..m).map(|i| r[(i, j)]).collect();
        let xn = norm2(&x);
        let mut v = x.clone();
        if xn > 0.0 {
            let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { C64::new(1.0, 0.0) };
            let alpha = -phase * xn;
            v[0] -= alpha;
        }
        let vn = norm2(&v);
        if vn > 0.0 {
            for z in v.iter_mut() {
                *z /= vn;
            }
            // R ← (I − 2vv*) R on rows j.., columns j..
            for c in j..n {
                let mut dot = C64::new(0.0, 0.0);
                for (t, vi) in v.iter().enumerate() {
                    dot += vi.conj() * r[(j + t, c)];
                }
                for (t, vi) in v.iter().enumerate() {
                    r[(j + t, c)] -= vi * dot * 2.0;
                }
            }
        }
        reflectors.push(v);
    }
    // Q = H_0 H_1 … H_{n−1} applied to the first n columns of I
    let mut q = ComplexMatrix::zeros(m, n);
    for i in 0..n {
        q[(i, i)] = C64::new(1.0, 0.0);
    }
    for j in (0..n).rev() {
        let v = &reflectors[j];
        for c in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for (t, vi) in v.iter().enumerate() {
                dot += vi.conj() * q[(j + t, c)];
            }
            for (t, vi) in v.iter().enumerate() {
                q[(j + t, c)] -= vi * dot * 2.0;
            }
        }
    }
    let r_upper = ComplexMatrix::from_fn(n, n, |i, j| if i <= j { r[(i, j)] } else { C64::new(0.0, 0.0) });
    (q, r_upper)
}

/// Moore–Penrose pseudoinverse (A*A)⁻¹A* of a full column rank matrix, via thin QR.
pub fn dagger(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (m, n) = (a.rows, a.cols);
    if m < n {
        return Err(Error::RankDeficient { ratio: 0.0 });
    }
    let (q, r) = householder_qr(a);
    let sv = singular_values(&r);
    let largest = sv.first().copied().unwrap_or(0.0);
    let smallest = sv.last().copied().unwrap_or(0.0);
    if n == 0 {
        return Ok(ComplexMatrix::zeros(0, m));
    }
    if !(largest > 0.0) || smallest <= tol::RANK * largest {
        let ratio = if largest > 0.0 { smallest / largest } else { 0.0 };
        return Err(Error::RankDeficient { ratio });
    }
    // solve R X = Q* by back substitution, column by column of Q*
    let qa = q.adjoint();
    let mut x = ComplexMatrix::zeros(n, m);
    for c in 0..m {
        for i in (0..n).rev() {
            let mut acc = qa[(i, c)];
            for t in i + 1..n {
                acc -= r[(i, t)] * x[(t, c)];
            }
            x[(i, c)] = acc / r[(i, i)];
        }
    }
    Ok(x)
}

/// Largest singular value by power iteration on the smaller Gram matrix.
///
/// Starts from the all-ones vector. If that start is annihilated, a fixed
/// non-symmetric start is used instead so the result stays deterministic.
pub fn spectral_norm(a: &ComplexMatrix) -> f64 {
    if a.rows == 0 || a.cols == 0 {
        return 0.0;
    }
    let ad = a.adjoint();
    let g = if a.rows >= a.cols { ad.mul(a) } else { a.mul(&ad) };
    let n = g.rows;
    let gmax = g.max_abs();
    if gmax == 0.0 {
        return 0.0;
    }
    let normalize = |v: &mut ComplexVector| {
        let s = norm2(v);
        for z in v.iter_mut() {
            *z /= s;
        }
    };
    let mut v: ComplexVector = vec![C64::new(1.0, 0.0); n];
    normalize(&mut v);
    let w = g.mul_vec(&v).expect("square");
    if norm2(&w) <= 1e-14 * gmax {
        v = (0..n).map(|j| C64::new(1.0 + (j as f64 * 0.754_877_666).sin(), (j as f64 * 0.569_840_29).cos())).collect();
        normalize(&mut v);
    }
    let mut lambda = 0.0f64;
    let mut stable = 0;
    for _ in 0..20_000 {
        let w = g.mul_vec(&v).expect("square");
        let next = inner(&v, &w).re;
        let wn = norm2(&w);
        if wn == 0.0 {
            break;
        }
        v = w.into_iter().map(|z| z / wn).collect();
        if (next - lambda).abs() <= 1e-16 * next.abs() {
            stable += 1;
            if stable >= 3 {
                lambda = next;
                break;
            }
        } else {
            stable = 0;
        }
        lambda = next;
    }
    lambda.max(0.0).sqrt()
}

/// Certified upper bound on ‖A‖_{∞→2}: sqrt(Σ_rows (Σ_cols |A_ij|)²).
///
/// This is not the exact norm, which would need a search over sign patterns.
pub fn inf_to_two_norm_upper(a: &ComplexMatrix) -> f64 {
    (0..a.rows)
        .map(|i| {
            let s: f64 = a.row(i).iter().map(|z| z.norm()).sum();
            s * s
        })
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eig_of_diagonal_is_sorted() {
        let h = ComplexMatrix::from_real(2, 2, &[3.0, 0.0, 0.0, 1.0]).unwrap();
        let e = hermitian_eig(&h, 1e-12).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 3.0]);
        assert!((e.eigenvectors[(1, 0)].norm() - 1.0).abs() < 1e-15);
        assert!((e.eigenvectors[(0, 1)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eig_of_swap() {
        let h = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let e = hermitian_eig(&h, 1e-12).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_of_identity() {
        let e = hermitian_eig(&ComplexMatrix::identity(4), 1e-12).unwrap();
        assert!(e.eigenvalues.iter().all(|&x| (x - 1.0).abs() < 1e-15));
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let h = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(hermitian_eig(&h, 1e-12), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn dagger_small_cases() {
        let i3 = ComplexMatrix::identity(3);
        assert!(dagger(&i3).unwrap().max_abs_diff(&i3) < 1e-15);
        let col = ComplexMatrix::from_real(2, 1, &[1.0, 1.0]).unwrap();
        let d = dagger(&col).unwrap();
        assert!(d.max_abs_diff(&ComplexMatrix::from_real(1, 2, &[0.5, 0.5]).unwrap()) < 1e-15);
    }

    #[test]
    fn dagger_rank_deficient() {
        let a = ComplexMatrix::from_real(3, 2, &[1.0, 2.0, 2.0, 4.0, 3.0, 6.0]).unwrap();
        assert!(matches!(dagger(&a), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn spectral_norm_examples() {
        let d = ComplexMatrix::from_real(2, 2, &[2.0, 0.0, 0.0, -3.0]).unwrap();
        assert!((spectral_norm(&d) - 3.0).abs() < 1e-12);
        assert_eq!(spectral_norm(&ComplexMatrix::zeros(3, 2)), 0.0);
        let j = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((spectral_norm(&j) - golden).abs() < 1e-12);
    }

    #[test]
    fn spectral_norm_start_in_null_space() {
        // all-ones start is annihilated by this matrix
        let a = ComplexMatrix::from_real(2, 2, &[1.0, -1.0, 1.0, -1.0]).unwrap();
        assert!((spectral_norm(&a) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn inf_to_two_examples() {
        assert!((inf_to_two_norm_upper(&ComplexMatrix::identity(2)) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(inf_to_two_norm_upper(&ComplexMatrix::from_real(1, 2, &[1.0, 1.0]).unwrap()), 2.0);
        // [[1,0],[1,0]]: the bound √2 is attained by x = (1, ±1)
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 1.0, 0.0]).unwrap();
        assert!((inf_to_two_norm_upper(&a) - 2f64.sqrt()).abs() < 1e-15);
        let exact = [-1.0, 1.0]
            .iter()
            .flat_map(|&s| [-1.0, 1.0].map(move |t| (s, t)))
            .map(|(s, t)| norm2(&a.mul_vec(&[c(s, 0.0), c(t, 0.0)]).unwrap()))
            .fold(0.0, f64::max);
        assert!((exact - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn qr_reproduces_input() {
        let a = ComplexMatrix::new(
            3,
            2,
            vec![c(1.0, 2.0), c(0.5, -1.0), c(-0.3, 0.1), c(2.0, 0.0), c(0.0, 1.0), c(1.0, 1.0)],
        )
        .unwrap();
        let (q, r) = householder_qr(&a);
        assert!(q.mul(&r).max_abs_diff(&a) < 1e-14);
        assert!(q.adjoint().mul(&q).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn new_rejects_nan_and_bad_length() {
        assert!(matches!(ComplexMatrix::new(1, 2, vec![c(0.0, 0.0)]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]), Err(Error::NonFinite(0))));
    }
}
