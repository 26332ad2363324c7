mod common;

use std::time::Instant;

use altdec_core::decimation::{
    build, canonical_second_order_defect, decimate, decimation_matrix, identity_grid, verify_delta_bar_factorization,
    verify_high_order_commutation, verify_multiplicative, verify_non_commutation, verify_scaling_identity,
    verify_second_order_defect, verify_third_order_terms, DecimationPlan, DenseOperators, OperatorKind, RatMatrix, Reference,
    StructuredOperator, Variant, QUOTED_FORMS,
};
use altdec_core::numerics::{norm_inf, ComplexVector, C64};
use altdec_core::Error;
use common::rng;
use proptest::prelude::*;
use rand::Rng;

const EXACT: f64 = 1e-14;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn plan(m: usize, rho: usize, r: usize) -> DecimationPlan {
    DecimationPlan::alternative(m, rho, r).unwrap()
}

fn random_v(seed: u64, m: usize) -> ComplexVector {
    let mut g = rng(seed);
    (0..m).map(|_| C64::new(g.gen_range(-1.0..1.0), g.gen_range(-1.0..1.0))).collect()
}

#[test]
fn first_rows_by_hand() {
    let p = plan(4, 2, 1);
    let st = build(OperatorKind::STildeRho, &p).unwrap().dense();
    let s = build(OperatorKind::SRho, &p).unwrap().dense();
    assert_eq!(st.row(0), &[c(0.5), c(0.0), c(0.0), c(0.5)]);
    assert_eq!(s.row(0), &[c(0.0), c(-0.5), c(-0.5), c(0.0)]);
    for l in 1..4 {
        assert_eq!(st.row(l), s.row(l));
    }
}

#[test]
fn unit_block_is_identity() {
    let p = plan(7, 1, 1);
    for kind in [OperatorKind::SRho, OperatorKind::STildeRho, OperatorKind::DRho] {
        let dense = build(kind, &p).unwrap().dense();
        assert!(dense.max_abs_diff(&altdec_core::ComplexMatrix::identity(7)) == 0.0);
    }
}

#[test]
fn subsampler_shape() {
    let d = build(OperatorKind::DRho, &plan(6, 2, 1)).unwrap().dense();
    assert_eq!((d.rows(), d.cols()), (3, 6));
    for l in 0..3 {
        for j in 0..6 {
            assert_eq!(d[(l, j)], c((j == 2 * l + 1) as u8 as f64));
        }
    }
}

#[test]
fn apply_examples() {
    let p = plan(4, 2, 1);
    let v = [c(1.0), c(2.0), c(3.0), c(4.0)];
    assert_eq!(build(OperatorKind::STildeRho, &p).unwrap().apply(&v).unwrap(), vec![c(2.5), c(1.5), c(2.5), c(3.5)]);
    assert_eq!(build(OperatorKind::DRho, &p).unwrap().apply(&v).unwrap(), vec![c(2.0), c(4.0)]);
    assert!(matches!(build(OperatorKind::DRho, &p).unwrap().apply(&v[..3]), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn invalid_plans() {
    assert!(matches!(DecimationPlan::alternative(4, 5, 1), Err(Error::InvalidPlan(_))));
    assert!(matches!(DecimationPlan::alternative(4, 2, 0), Err(Error::InvalidPlan(_))));
    assert!(matches!(DecimationPlan::alternative(4, 0, 1), Err(Error::InvalidPlan(_))));
}

#[test]
fn decimate_examples() {
    assert_eq!(decimate(&[c(1.0); 4], &plan(4, 2, 1)).unwrap(), vec![c(1.0); 2]);
    for seed in 0..20 {
        let m = 12;
        let q = random_v(seed, m);
        for rho in [1, 2, 3, 4, 6, 12] {
            let alt = decimate(&q, &plan(m, rho, 1)).unwrap();
            let can = decimate(&q, &DecimationPlan::new(m, rho, 1, Variant::Canonical).unwrap()).unwrap();
            assert_eq!(alt, can, "first order decimations must agree");
        }
    }
    let q = random_v(99, 4);
    let alt = decimate(&q, &plan(4, 2, 2)).unwrap();
    let can = decimate(&q, &DecimationPlan::new(4, 2, 2, Variant::Canonical).unwrap()).unwrap();
    assert!((alt[0] - can[0]).norm() > 1e-6);
    assert!((alt[1] - can[1]).norm() < 1e-15, "the gap sits in the first decimated sample only");
}

#[test]
fn decimate_matches_dense_and_handles_remainders() {
    for (m, rho, r) in [(13, 4, 1), (13, 4, 2), (10, 3, 3), (9, 9, 2)] {
        for variant in [Variant::Alternative, Variant::Canonical] {
            let p = DecimationPlan::new(m, rho, r, variant).unwrap();
            let q = random_v(m as u64, m);
            let fast = decimate(&q, &p).unwrap();
            let slow = decimation_matrix(&p).mul_vec(&q).unwrap();
            assert_eq!(fast.len(), m / rho);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).norm() <= 1e-12);
            }
        }
    }
}

#[test]
fn scaling_relation_examples() {
    assert!(verify_scaling_identity(&plan(12, 3, 1)).unwrap() <= EXACT);
    assert!(verify_scaling_identity(&plan(8, 1, 1)).unwrap() <= EXACT);
    assert!(matches!(verify_scaling_identity(&plan(9, 2, 1)), Err(Error::HypothesisViolated(_))));
}

#[test]
fn factorization_examples() {
    for (m, rho) in [(6, 2), (6, 1), (10, 5)] {
        assert!(verify_delta_bar_factorization(&plan(m, rho, 1)) <= EXACT);
    }
}

#[test]
fn multiplicative_examples() {
    assert!(verify_multiplicative(&plan(8, 4, 1), 2, 2).unwrap() <= EXACT);
    assert!(verify_multiplicative(&plan(8, 4, 1), 1, 4).unwrap() <= EXACT);
    assert!(verify_multiplicative(&plan(24, 6, 1), 2, 3).unwrap() <= EXACT);
    assert!(verify_multiplicative(&plan(24, 6, 1), 3, 2).unwrap() <= EXACT);
    assert!(matches!(verify_multiplicative(&plan(24, 6, 1), 2, 2), Err(Error::HypothesisViolated(_))));
}

#[test]
fn high_order_examples() {
    assert!(verify_high_order_commutation(&plan(12, 3, 2)).unwrap() <= EXACT);
    assert!(verify_high_order_commutation(&plan(16, 4, 3)).unwrap() <= EXACT);
    assert!(verify_high_order_commutation(&plan(12, 3, 1)).unwrap() <= EXACT);
}

#[test]
fn non_commutation_structure() {
    let nc = verify_non_commutation(&plan(6, 2, 1)).unwrap();
    assert!(nc.corrected_deviation <= EXACT);
    // the defect is a ones column at m−ρ plus a −1 column at m−1 on rows l ≥ ρ
    let mut want: Vec<(usize, usize, f64)> = (1..=6).map(|l| (l, 4, 1.0)).collect();
    want.extend((2..=6).map(|l| (l, 5, -1.0)));
    want.sort_by_key(|&(l, s, _)| (l, s));
    assert_eq!(nc.defect.nonzeros(), want);
    assert_eq!(nc.ones_column_deviation, 1.0);
    // ρ = 1: Δ̄₁ = Δ commutes with Δ and the defect vanishes
    let nc = verify_non_commutation(&plan(5, 1, 1)).unwrap();
    assert!(nc.defect.is_zero());
}

#[test]
fn second_order_defect_structure() {
    let d = verify_second_order_defect(&plan(8, 2, 2)).unwrap();
    assert_eq!(d.position, 6);
    assert_eq!(d.column, vec![1.0, 0.0, 0.0, 0.0]);
    assert_eq!(d.nonzero_columns, vec![6, 7]);
    assert_eq!(d.defect.nonzeros(), vec![(1, 6, 1.0), (1, 7, -1.0)]);
    assert!(d.corrected_deviation <= EXACT);
    let d = verify_second_order_defect(&plan(12, 3, 2)).unwrap();
    assert_eq!(d.position, 9);
    assert_eq!(d.nonzero_columns, vec![9, 11]);
    assert!(matches!(verify_second_order_defect(&plan(9, 2, 2)), Err(Error::HypothesisViolated(_))));
}

#[test]
fn third_order_terms_structure() {
    let t = verify_third_order_terms(&plan(20, 4, 3)).unwrap();
    assert!(t.products.iter().all(|&d| d <= EXACT), "{:?}", t.products);
    assert!(t.first_term_deviation <= EXACT);
    assert!(t.second_term_deviation <= EXACT);
    assert!(t.chain_decomposition_deviation <= EXACT);
    assert!(t.order_m_decomposition_deviation >= 1.0);
    let t = verify_third_order_terms(&plan(12, 2, 3)).unwrap();
    assert!(t.chain_decomposition_deviation <= EXACT);
    assert!(matches!(verify_third_order_terms(&plan(8, 4, 3)), Err(Error::HypothesisViolated(_))));
}

#[test]
fn first_order_equality_up_to_64() {
    let ops = Reference;
    for m in 1..=64 {
        for rho in (1..=m).filter(|r| m % r == 0) {
            let d = ops.d(m, rho);
            assert!(d.mul(&ops.s_tilde(m, rho)).deviation(&d.mul(&ops.s(m, rho))) == 0.0, "m={m} rho={rho}");
        }
    }
}

#[test]
fn canonical_second_order_gap() {
    for (m, rho) in [(4, 2), (12, 3), (16, 4), (24, 6)] {
        assert!(canonical_second_order_defect(&Reference, &plan(m, rho, 2)).unwrap() <= EXACT);
        let ops = Reference;
        let d = ops.d(m, rho);
        let gap = RatMatrix::chain(&[&d, &ops.s(m, rho), &ops.l(m, rho), &ops.delta(m).pow(2)]);
        let v = (rho as f64 - 1.0) / (rho * rho) as f64;
        assert_eq!(gap.nonzeros(), vec![(1, m - 1, -v), (1, m, v)]);
    }
}

#[test]
fn identity_grid_to_24() {
    let t = Instant::now();
    let grid = identity_grid(24, &Reference);
    let elapsed = t.elapsed();
    for o in &grid {
        if QUOTED_FORMS.contains(&o.name) {
            assert!(o.quoted_form && !o.passed(), "{} unexpectedly holds", o.name);
        } else {
            assert!(o.passed(), "{} deviates by {}", o.name, o.max_deviation);
        }
        assert!(o.cases > 0);
    }
    assert_eq!(grid.iter().filter(|o| o.quoted_form).count(), QUOTED_FORMS.len());
    assert!(elapsed.as_secs_f64() < 10.0, "{elapsed:?}");
}

#[test]
fn trivial_grid() {
    let grid = identity_grid(1, &Reference);
    assert!(grid.iter().all(|o| o.passed()));
}

struct Corrupted;

impl DenseOperators for Corrupted {
    fn s(&self, m: usize, rho: usize) -> RatMatrix {
        let mut s = Reference.s(m, rho);
        if m > 1 {
            let (num, den) = s.entry(m - 1, m - 1);
            s.set(m - 1, m - 1, num + 1, den);
        }
        s
    }
}

#[test]
fn corrupted_averager_is_caught() {
    let grid = identity_grid(12, &Corrupted);
    let failed: Vec<_> = grid.iter().filter(|o| !o.quoted_form && !o.passed()).map(|o| o.name).collect();
    assert!(failed.contains(&"scaling_relation"));
    assert!(failed.contains(&"delta_bar_factorization"));
}

fn kinds() -> Vec<OperatorKind> {
    vec![OperatorKind::SRho, OperatorKind::STildeRho, OperatorKind::DRho, OperatorKind::Delta, OperatorKind::DeltaBarRho]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apply_matches_dense(seed in any::<u64>(), m in 1usize..=40, rho_pick in 0usize..40) {
        let rho = 1 + rho_pick % m;
        let p = plan(m, rho, 1);
        let v = random_v(seed, m);
        let scale = norm_inf(&v).max(1.0);
        for kind in kinds() {
            let op = build(kind.clone(), &p).unwrap();
            let fast = op.apply(&v).unwrap();
            let slow = op.dense().mul_vec(&v).unwrap();
            for (a, b) in fast.iter().zip(&slow) {
                prop_assert!((a - b).norm() <= 1e-12 * scale, "{:?}", kind);
            }
        }
        let chain = StructuredOperator::compose(vec![
            build(OperatorKind::DRho, &p).unwrap(),
            build(OperatorKind::SRho, &p).unwrap(),
            build(OperatorKind::Delta, &p).unwrap(),
        ]).unwrap();
        let fast = chain.apply(&v).unwrap();
        let slow = chain.dense().mul_vec(&v).unwrap();
        for (a, b) in fast.iter().zip(&slow) {
            prop_assert!((a - b).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn identities_on_random_plans(eta in 1usize..=8, rho in 1usize..=6, r in 1usize..=3) {
        let p = plan(eta * rho, rho, r);
        prop_assert!(verify_scaling_identity(&p).unwrap() <= EXACT);
        prop_assert!(verify_delta_bar_factorization(&p) <= EXACT);
        prop_assert!(verify_high_order_commutation(&p).unwrap() <= EXACT);
    }
}
