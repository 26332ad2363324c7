//! Random frames inside the hypotheses of the error bounds, drawn from a seeded stream.

use altdec_core::frames::{HarmonicFrameSpec, UgfSpec};
use altdec_core::numerics::C64;

use crate::rng::{distinct_ints, int_range, signal_draw, Stream};

/// Harmonic frame, k ≤ 8, distinct frequencies in [−k/2, k/2], η > k. Returns (spec, ρ).
pub fn harmonic(s: &mut Stream) -> (HarmonicFrameSpec, usize) {
    let k = int_range(s, 2, 8) as usize;
    let half = k as i64 / 2;
    let freqs = distinct_ints(s, -half, half, k);
    let eta = int_range(s, k as i64 + 1, 2 * k as i64 + 4) as usize;
    let rho = int_range(s, 1, 8) as usize;
    (HarmonicFrameSpec::new(rho * eta, freqs), rho)
}

/// Harmonic frame with every frequency nonzero mod m, so its vectors sum to zero.
pub fn zero_sum_harmonic(s: &mut Stream) -> HarmonicFrameSpec {
    let m = int_range(s, 6, 60) as usize;
    let k = int_range(s, 1, 4) as usize;
    HarmonicFrameSpec::new(m, distinct_ints(s, 1, m as i64 - 1, k))
}

/// UGF with integer eigenvalues in [−η/2, η/2] that are distinct mod η, and a base
/// vector with every |c_s|² above 0.02/k. `nonzero` also excludes λ = 0. Returns (spec, ρ).
pub fn ugf(s: &mut Stream, nonzero: bool) -> (UgfSpec, usize) {
    let k = int_range(s, 1, 6) as usize;
    let eta = int_range(s, 2 * k as i64 + 2, 2 * k as i64 + 10) as usize;
    let rho = int_range(s, 1, 8) as usize;
    let half = (eta / 2) as i64;
    let hi = if eta % 2 == 0 { half - 1 } else { half };
    let mut lams = distinct_ints(s, -half, hi, k + 1);
    if nonzero {
        lams.retain(|&l| l != 0);
    }
    lams.truncate(k);
    let base_coeffs: Vec<C64> = loop {
        let c = signal_draw(s, k, 1.0);
        if c.iter().all(|z| z.norm_sqr() > 0.02 / k as f64) {
            break c;
        }
    };
    (UgfSpec { m: rho * eta, eigenvalues: lams.iter().map(|&l| l as f64).collect(), base_coeffs }, rho)
}
