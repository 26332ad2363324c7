mod common;

use std::f64::consts::PI;

use altdec_core::frames::{
    appendix_b_frame, frame_bounds, frame_variation, harmonic_frame, matrix_frame_bounds, ugf_frame, ugf_from_generator,
    zero_sum_check, HarmonicFrameSpec, UgfSpec,
};
use altdec_core::numerics::{hermitian_eig, ComplexMatrix, C64};
use altdec_core::Error;
use common::{distinct_ints, rng, ugf_instance, unit_vector};
use rand::Rng;

#[test]
fn harmonic_matches_ugf_identification() {
    let mut g = rng(11);
    for _ in 0..20 {
        let m = g.gen_range(1..=64usize);
        let k = g.gen_range(1..=8usize);
        let freqs = distinct_ints(&mut g, -40, 40, k);
        let h = HarmonicFrameSpec::new(m, freqs);
        let e = harmonic_frame(&h).unwrap().e;
        let phi = ugf_frame(&h.as_ugf()).unwrap().e;
        assert!(e.max_abs_diff(&phi) <= 1e-12, "m={m} k={k}");
    }
}

#[test]
fn harmonic_examples() {
    let f = harmonic_frame(&HarmonicFrameSpec::new(6, (0..6).collect())).unwrap();
    assert!(f.e.adjoint().mul(&f.e).max_abs_diff(&ComplexMatrix::identity(6)) <= 1e-10);
    let f = harmonic_frame(&HarmonicFrameSpec::new(4, vec![0, 1])).unwrap();
    assert!((f.e[(0, 1)] - C64::new(0.0, -1.0 / 2f64.sqrt())).norm() < 1e-15);
    assert_eq!(harmonic_frame(&HarmonicFrameSpec::new(4, vec![1, 1])).unwrap_err(), Error::DuplicateFrequencies(1));
}

#[test]
fn appendix_b_is_rephased_harmonic() {
    for (m, k) in [(130, 55), (24, 8), (7, 3)] {
        let b = appendix_b_frame(m, k).e;
        let h = harmonic_frame(&HarmonicFrameSpec::new(m, (2..=k as i64 + 1).collect())).unwrap().e;
        for l in 0..m {
            // row l (0-based) of the appendix_b frame is harmonic row l+1 times e^{+2πi(l+1)/m}
            let phase = C64::from_polar(1.0, 2.0 * PI * (l + 1) as f64 / m as f64);
            for j in 0..k {
                assert!((b[(l, j)] - h[(l, j)] * phase).norm() < 1e-12);
            }
        }
    }
    assert!((appendix_b_frame(1, 1).e[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn ugf_examples() {
    let one = ugf_frame(&UgfSpec { m: 5, eigenvalues: vec![0.0], base_coeffs: vec![C64::new(1.0, 0.0)] }).unwrap();
    assert!(one.e.column(0).iter().all(|z| (z - C64::new(1.0, 0.0)).norm() < 1e-15));
    let bad = UgfSpec { m: 5, eigenvalues: vec![0.0, 1.0], base_coeffs: vec![C64::new(1.0, 0.0); 2] };
    assert!(matches!(ugf_frame(&bad), Err(Error::NonUnitBaseVector(_))));
}

#[test]
fn ugf_frame_operator_eigenvalues() {
    let mut g = rng(12);
    for _ in 0..20 {
        let k = g.gen_range(1..=6usize);
        let m = g.gen_range(2 * k..=40);
        let lams = distinct_ints(&mut g, 0, m as i64 - 1, k);
        let c = unit_vector(&mut g, k);
        let spec = UgfSpec { m, eigenvalues: lams.iter().map(|&l| l as f64).collect(), base_coeffs: c.clone() };
        let phi = ugf_frame(&spec).unwrap().e;
        let eig = hermitian_eig(&phi.adjoint().mul(&phi), 1e-12).unwrap();
        let mut want: Vec<f64> = c.iter().map(|z| m as f64 * z.norm_sqr()).collect();
        want.sort_by(f64::total_cmp);
        for (a, b) in eig.eigenvalues.iter().zip(&want) {
            assert!((a - b).abs() <= 1e-8 * m as f64);
        }
    }
}

#[test]
fn generator_examples() {
    let k = 3;
    let omega = ComplexMatrix::from_diag(&[C64::new(2.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 0.0)]);
    let phi0 = vec![C64::new(1.0 / 3f64.sqrt(), 0.0); k];
    let spec = ugf_from_generator(&omega, &phi0, 9).unwrap();
    let h = harmonic_frame(&HarmonicFrameSpec::new(9, vec![-1, 0, 2])).unwrap().e;
    // eigenvalues ascend, so columns come out as frequencies −1, 0, 2 up to unit phases
    let phi = ugf_frame(&spec).unwrap().e;
    for j in 0..k {
        let ratio = phi[(0, j)] / h[(0, j)];
        assert!((ratio.norm() - 1.0).abs() < 1e-12);
        for l in 0..9 {
            assert!((phi[(l, j)] - h[(l, j)] * ratio).norm() < 1e-12);
        }
    }

    let zero = ugf_from_generator(&ComplexMatrix::zeros(2, 2), &[C64::new(0.6, 0.0), C64::new(0.0, 0.8)], 4).unwrap();
    assert!(zero.eigenvalues.iter().all(|&l| l == 0.0));
    assert!((zero.base_coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-12);

    let swap = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
    let s = ugf_from_generator(&swap, &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], 4).unwrap();
    assert!((s.eigenvalues[0] + 1.0).abs() < 1e-12 && (s.eigenvalues[1] - 1.0).abs() < 1e-12);
    assert!(s.base_coeffs.iter().all(|c| (c.norm_sqr() - 0.5).abs() < 1e-12));

    let bad = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
    assert!(matches!(ugf_from_generator(&bad, &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], 4), Err(Error::NotHermitian { .. })));
}

#[test]
fn variation_examples() {
    assert_eq!(frame_variation(&ComplexMatrix::from_fn(3, 4, |_, _| C64::new(0.3, -0.1))), 0.0);
    let e = ComplexMatrix::from_real(2, 3, &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0]).unwrap();
    assert!((frame_variation(&e) - 2.0 * 2f64.sqrt()).abs() < 1e-15);
}

#[test]
fn harmonic_variation_bound() {
    let mut g = rng(13);
    for _ in 0..50 {
        let k = g.gen_range(1..=10usize);
        let half = k as i64 / 2;
        let freqs = distinct_ints(&mut g, -half, half, k);
        let m = g.gen_range(k..=80);
        let e = harmonic_frame(&HarmonicFrameSpec::new(m, freqs)).unwrap().e;
        assert!(frame_variation(&e.adjoint()) <= 2.0 * PI * (k as f64 + 1.0) / 3f64.sqrt() + 1e-9);
    }
}

#[test]
fn ugf_subframe_bounds_and_variation() {
    let mut g = rng(14);
    for _ in 0..50 {
        let (spec, rho) = ugf_instance(&mut g, false);
        let eta = spec.m / rho;
        let sub = ugf_frame(&UgfSpec { m: eta, ..spec.clone() }).unwrap();
        let (a, b) = frame_bounds(&sub);
        let lo = spec.base_coeffs.iter().map(|c| c.norm_sqr()).fold(f64::INFINITY, f64::min);
        let hi = spec.base_coeffs.iter().map(|c| c.norm_sqr()).fold(0.0, f64::max);
        assert!((a - eta as f64 * lo).abs() <= 1e-8 * eta as f64, "lower frame bound");
        assert!((b - eta as f64 * hi).abs() <= 1e-8 * eta as f64, "upper frame bound");
        assert!(frame_variation(&sub.e.adjoint()) <= 2.0 * PI * spec.max_abs_lambda() + 1e-9);
    }
}

#[test]
fn frame_bound_examples() {
    let f = harmonic_frame(&HarmonicFrameSpec::new(12, vec![-1, 0, 1])).unwrap();
    let (a, b) = frame_bounds(&f);
    assert!((a - 4.0).abs() < 1e-10 && (b - 4.0).abs() < 1e-10);
    let dup = ComplexMatrix::from_real(4, 2, &[1.0, 1.0, 2.0, 2.0, -1.0, -1.0, 0.5, 0.5]).unwrap();
    assert!(matrix_frame_bounds(&dup).0 <= 1e-10);
}

#[test]
fn zero_sum_examples() {
    assert!(zero_sum_check(&harmonic_frame(&HarmonicFrameSpec::new(10, vec![1, -2, 3])).unwrap()));
    assert!(!zero_sum_check(&harmonic_frame(&HarmonicFrameSpec::new(10, vec![0, 1])).unwrap()));
    assert!(!zero_sum_check(&harmonic_frame(&HarmonicFrameSpec::new(1, vec![3])).unwrap()));
}
