//! Seeded random streams.
//!
//! Everything draws from SplitMix64 (state += 0x9E3779B97F4A7C15, then the usual
//! xor-shift-multiply finalizer), which is short enough to re-implement anywhere.
//! Uniforms take the top 53 bits. Normals use Box–Muller on two uniforms, and one
//! pair gives the real and imaginary part of one complex coordinate.

use std::f64::consts::PI;

use altdec_core::numerics::{norm2, ComplexVector, C64};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

pub type Stream = SplitMix64;

pub fn stream(seed: u64) -> Stream {
    SplitMix64::seed_from_u64(seed)
}

/// Independent sub-stream for one experiment cell. Depends only on (seed, r, ρ), so
/// results do not depend on scheduling.
pub fn cell_stream(seed: u64, r: usize, rho: usize) -> Stream {
    let key = ((r as u64) << 32) | rho as u64;
    let mut mix = stream(seed ^ key.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    stream(mix.next_u64())
}

/// Uniform on [0, 1) with 53 random bits.
pub fn uniform(s: &mut Stream) -> f64 {
    (s.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn uniform_range(s: &mut Stream, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * uniform(s)
}

/// Uniform integer in lo..=hi.
pub fn int_range(s: &mut Stream, lo: i64, hi: i64) -> i64 {
    assert!(lo <= hi);
    let span = (hi - lo) as u64 + 1;
    lo + (s.next_u64() % span) as i64
}

/// One standard complex normal pair (re, im) from Box–Muller.
pub fn normal_pair(s: &mut Stream) -> (f64, f64) {
    let u1 = 1.0 - uniform(s); // (0, 1]
    let u2 = uniform(s);
    let rad = (-2.0 * u1.ln()).sqrt();
    (rad * (2.0 * PI * u2).cos(), rad * (2.0 * PI * u2).sin())
}

/// x uniform on the complex sphere of radius `norm` in ℂᵏ.
pub fn signal_draw(s: &mut Stream, k: usize, norm: f64) -> ComplexVector {
    loop {
        let v: ComplexVector = (0..k)
            .map(|_| {
                let (a, b) = normal_pair(s);
                C64::new(a, b)
            })
            .collect();
        let n = norm2(&v);
        if n > 0.0 {
            return v.into_iter().map(|z| z * (norm / n)).collect();
        }
    }
}

/// Fisher–Yates shuffle followed by truncation: k distinct values from lo..=hi.
pub fn distinct_ints(s: &mut Stream, lo: i64, hi: i64, k: usize) -> Vec<i64> {
    let mut pool: Vec<i64> = (lo..=hi).collect();
    assert!(k <= pool.len());
    for i in 0..k {
        let j = int_range(s, i as i64, pool.len() as i64 - 1) as usize;
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool
}
