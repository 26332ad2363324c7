#![allow(dead_code)]

use altdec_core::frames::{HarmonicFrameSpec, UgfSpec};
use altdec_core::numerics::{norm2, ComplexMatrix, ComplexVector, C64};
use altdec_core::sigma_delta::Alphabet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn unit_vector(rng: &mut impl Rng, k: usize) -> ComplexVector {
    let v: ComplexVector = (0..k).map(|_| C64::new(gaussian(rng), gaussian(rng))).collect();
    let n = norm2(&v);
    v.into_iter().map(|z| z / n).collect()
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let a = random_matrix(rng, n, n);
    a.add(&a.adjoint()).scale(C64::new(0.5, 0.0))
}

pub fn desk_alphabet() -> Alphabet {
    Alphabet::new(100, 0.5, true)
}

/// k distinct integers from the given inclusive range.
pub fn distinct_ints(rng: &mut impl Rng, lo: i64, hi: i64, k: usize) -> Vec<i64> {
    let mut pool: Vec<i64> = (lo..=hi).collect();
    pool.shuffle(rng);
    pool.truncate(k);
    pool
}

/// Harmonic frame with k ≤ 8, frequencies in [−k/2, k/2], η > k and ρ | m.
pub fn harmonic_instance(rng: &mut impl Rng) -> (HarmonicFrameSpec, usize) {
    let k = rng.gen_range(2..=8usize);
    let half = k as i64 / 2;
    let freqs = distinct_ints(rng, -half, half, k);
    let eta = rng.gen_range(k + 1..=2 * k + 4);
    let rho = rng.gen_range(1..=8usize);
    (HarmonicFrameSpec::new(rho * eta, freqs), rho)
}

/// UGF with integer eigenvalues in [−η/2, η/2], distinct mod η, optionally all nonzero.
pub fn ugf_instance(rng: &mut impl Rng, nonzero: bool) -> (UgfSpec, usize) {
    let k = rng.gen_range(1..=6usize);
    let eta = rng.gen_range(2 * k + 2..=2 * k + 10);
    let rho = rng.gen_range(1..=8usize);
    let half = (eta / 2) as i64;
    // drop +η/2 so that ±η/2 never collide mod η
    let hi = if eta % 2 == 0 { half - 1 } else { half };
    let mut lams = distinct_ints(rng, -half, hi, k + 1);
    if nonzero {
        lams.retain(|&l| l != 0);
    }
    lams.truncate(k);
    let base_coeffs = loop {
        let c = unit_vector(rng, k);
        if c.iter().all(|z| z.norm_sqr() > 0.02 / k as f64) {
            break c;
        }
    };
    (UgfSpec { m: rho * eta, eigenvalues: lams.iter().map(|&l| l as f64).collect(), base_coeffs }, rho)
}
